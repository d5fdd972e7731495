#include <doctest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <filesystem>
#include <thread>

#include "chronicle/session/server.hpp"

using namespace chronicle;
using namespace chronicle::session;
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;

namespace {

class Client {
 public:
  explicit Client(unsigned short port) : ws_(io_) {
    asio::ip::tcp::resolver resolver(io_);
    asio::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws_.handshake("127.0.0.1", "/");
    ws_.text(true);
  }

  void send(const Json& message) { ws_.write(asio::buffer(message.dump())); }

  Json receive() {
    beast::flat_buffer buffer;
    ws_.read(buffer);
    return Json::parse(beast::buffers_to_string(buffer.data()));
  }

  // Reads until a message of `type` (and directive kind, for renders) arrives.
  Json receive_until(const std::string& type, const std::string& kind = {}) {
    for (;;) {
      auto m = receive();
      if (m.at("type") != type) continue;
      if (!kind.empty() && m.at("directive").at("kind") != kind) continue;
      return m;
    }
  }

  void close() { ws_.close(websocket::close_code::normal); }

 private:
  asio::io_context io_;
  websocket::stream<asio::ip::tcp::socket> ws_;
};

}  // namespace

TEST_SUITE("server") {
  TEST_CASE("websocket session end to end") {
    const auto dir = std::filesystem::path("server_traces");
    std::filesystem::remove_all(dir);
    Server::Options options;
    options.defaults.latency = sched::LatencyProfile::fixed_delay(0.2);
    options.trace_dir = dir.string();
    Server server(options);
    REQUIRE(server.port() != 0);
    std::thread runner([&] { server.run(); });

    {
      Client client(server.port());
      client.send(Json{{"type", "interact"}, {"target", "Jan"}});
      CHECK(client.receive().at("code") == "protocol");

      client.send(Json{{"type", "hello"}, {"config", {{"policy", "multiples:3"}, {"seed", 4}}}});
      const auto ack = client.receive();
      CHECK(ack.at("type") == "config_ack");
      CHECK(ack.at("policy") == "multiples:3");

      client.send(Json{{"type", "interact"}, {"target", "Mar"}});
      const auto spinner = client.receive();
      CHECK(spinner.at("directive").at("kind") == "SpinnerOn");
      // The response is pushed without further client input.
      const auto render = client.receive_until("render", "RenderResponse");
      CHECK(render.at("directive").at("target") == "Mar");
      CHECK(render.at("directive").at("at").get<double>() >= 0.2);

      client.send(Json{{"type", "interact"}, {"target", "Smarch"}});
      CHECK(client.receive_until("error").at("code") == "unknown_facet");

      client.send(Json{{"type", "submit_answer"}, {"answer", true}});
      const auto summary = client.receive_until("summary");
      CHECK(summary.contains("correct"));
      REQUIRE(summary.contains("trace_path"));
      CHECK(std::filesystem::exists(summary.at("trace_path").get<std::string>()));
      client.close();
    }
    {
      // Connections are independent.
      Client a(server.port());
      Client b(server.port());
      a.send(Json{{"type", "hello"}});
      CHECK(a.receive().at("type") == "config_ack");
      b.send(Json{{"type", "submit_answer"}, {"answer", true}});
      CHECK(b.receive().at("code") == "protocol");
      a.close();
      b.close();
    }

    server.stop();
    runner.join();
  }
}
