#include "wicketsim/server.hpp"

#include <chrono>
#include <ostream>

#include "httplib.h"

namespace wicketsim {

HttpServer::HttpServer(const Api& api, std::ostream& log)
    : api_(api), log_(log), server_(std::make_unique<httplib::Server>()) {
  // httplib's default also sets SO_REUSEPORT, which lets a second server bind a
  // port that is already serving. Keep SO_REUSEADDR only so "port in use" is reported.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
  });
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = api_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Get(".*", dispatch);
  server_->Post(".*", dispatch);
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server_->set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", api_.options().cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server_->set_logger([this](const httplib::Request& req, const httplib::Response& res) {
    std::lock_guard lock(log_mutex_);
    log_ << req.method << ' ' << req.path << ' ' << res.status << ' ' << res.body.size() << "B\n"
         << std::flush;
  });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace wicketsim
