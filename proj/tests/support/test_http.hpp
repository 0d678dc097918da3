#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "httplib.h"

namespace vtr_test {

// In-process HTTP server bound to a random loopback port. Register
// handlers on server() before calling start().
class HttpServer {
 public:
  HttpServer() = default;
  ~HttpServer() { stop(); }

  httplib::Server& server() { return server_; }

  void start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind test HTTP server");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  int port() const { return port_; }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace vtr_test
