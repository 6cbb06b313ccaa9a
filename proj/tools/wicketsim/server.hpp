#pragma once

#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>

#include "wicketsim/api.hpp"

namespace httplib {
class Server;
}

namespace wicketsim {

/// HTTP/1.1 front end for Api. Logs one line per request.
class HttpServer {
 public:
  HttpServer(const Api& api, std::ostream& log);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns false when the address is unavailable.
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }

  /// Blocks until stop() is called.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  const Api& api_;
  std::ostream& log_;
  std::mutex log_mutex_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

}  // namespace wicketsim
