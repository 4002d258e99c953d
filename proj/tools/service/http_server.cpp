#include "http_server.hpp"

#include <iostream>

#include "service.hpp"

namespace cforge::service {

bool configure(httplib::Server& server, const std::string& static_dir) {
  server.set_read_timeout(10, 0);
  server.set_write_timeout(10, 0);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) return false;

  auto forward = [](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", forward);
  server.Post(R"(/api/.*)", forward);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  return true;
}

bool serve(const ServerOptions& options) {
  httplib::Server server;
  if (!configure(server, options.static_dir)) {
    std::cerr << "static directory not found: " << options.static_dir << "\n";
    return false;
  }
  if (!server.bind_to_port(options.host, options.port)) return false;
  std::cerr << "listening on http://" << options.host << ":" << options.port << "\n";
  return server.listen_after_bind();
}

}  // namespace cforge::service
