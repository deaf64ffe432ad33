// Copyright 2026 The refannot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP frontend of ElicitationService. Bodies are JSON.
//
//   POST /sessions                      {"experiment", "participant"}
//   GET  /sessions/{id}/current-scene
//   POST /sessions/{id}/submissions     {"text", "override"?}
//   POST /annotate                      {"text", "language"?, "lexicon"}
//   GET  /experiments/{id}/responses
//   GET  /healthz
//
// Errors are {"error": {"code", "message", "retryable"}} with status 400
// (bad request, empty submission), 404 (unknown id), 409 (closed session)
// or 500.

#ifndef REFANNOT_HTTP_SERVER_H_
#define REFANNOT_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "refannot/error.h"
#include "refannot/service.h"

namespace refannot {

class HttpServer {
 public:
  explicit HttpServer(ElicitationService *service);
  ~HttpServer();

  // Binds host:port (port 0 picks a free port) and returns the bound port.
  int Bind(const std::string &host, int port);
  // Serves until Stop(). Requires Bind.
  void Serve();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for an error code.
int HttpStatus(ErrorCode code);

}  // namespace refannot

#endif  // REFANNOT_HTTP_SERVER_H_
