#include "chronicle/session/server.hpp"

#include <chrono>
#include <deque>
#include <iostream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "chronicle/error.hpp"
#include "chronicle/session/protocol.hpp"

namespace chronicle::session {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using Clock = std::chrono::steady_clock;

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, const Server::Options& options, std::string label)
      : ws_(std::move(socket)),
        timer_(ws_.get_executor()),
        session_(options.defaults, options.trace_dir, std::move(label)),
        opened_(Clock::now()) {}

  void start() {
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->read();
    });
  }

  void close() {
    beast::error_code ignored;
    timer_.cancel();
    beast::get_lowest_layer(ws_).close(ignored);
  }

 private:
  Seconds elapsed() const {
    return std::chrono::duration<double>(Clock::now() - opened_).count();
  }

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->timer_.cancel();
        return;
      }
      const auto text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->send(self->session_.handle_client_text(text, self->elapsed()));
      self->arm();
      self->read();
    });
  }

  void arm() {
    const auto due = session_.next_due();
    timer_.cancel();
    if (!due) return;
    const auto wait = std::chrono::duration<double>(std::max(0.0, *due - elapsed()));
    timer_.expires_after(std::chrono::duration_cast<Clock::duration>(wait));
    timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      // Timer resolution may fire slightly early; poll uses the due time then.
      auto now = self->elapsed();
      if (auto due = self->session_.next_due()) now = std::max(now, *due);
      self->send(self->session_.poll(now));
      self->arm();
    });
  }

  void send(const std::vector<Json>& messages) {
    const bool idle = outbox_.empty();
    for (const auto& m : messages) outbox_.push_back(m.dump());
    if (idle && !outbox_.empty()) write();
  }

  void write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return;
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) self->write();
                    });
  }

  websocket::stream<tcp::socket> ws_;
  asio::steady_timer timer_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  LiveSession session_;
  Clock::time_point opened_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(Options opts) : options(std::move(opts)), acceptor(io) {
    const tcp::endpoint endpoint(asio::ip::make_address(options.address), options.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen();
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto connection = std::make_shared<Connection>(std::move(socket), options,
                                                     "conn" + std::to_string(++accepted));
      connections.push_back(connection);
      connection->start();
      accept();
    });
  }

  Options options;
  asio::io_context io;
  tcp::acceptor acceptor;
  std::vector<std::weak_ptr<Connection>> connections;
  std::size_t accepted = 0;
};

Server::Server(Options options) {
  try {
    impl_ = std::make_unique<Impl>(std::move(options));
  } catch (const boost::system::system_error& e) {
    throw Error(ErrorCode::kIo, std::string("cannot listen: ") + e.what());
  }
}

Server::~Server() = default;

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  impl_->accept();
  impl_->io.run();
}

void Server::stop() {
  asio::post(impl_->io, [impl = impl_.get()] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    for (auto& weak : impl->connections) {
      if (auto c = weak.lock()) c->close();
    }
    impl->io.stop();
  });
}

}  // namespace chronicle::session
