// Copyright 2026 The Dejargon Authors.
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

// Re-records tests/fixtures/pipeline/llm by running the pipeline in record
// mode against the stub provider.
//
//   record_fixtures <dejargon binary> <fixture root> <scratch dir>

#include <iostream>

#include "support/pipeline.hpp"
#include "support/stub_llm.hpp"

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: record_fixtures <dejargon> <fixture root> <scratch dir>\n";
    return 2;
  }
  const std::filesystem::path fixtures = argv[2];
  std::filesystem::remove_all(fixtures / "llm");
  stub::Server provider;
  const auto run = pipeline::run(argv[1], fixtures, std::filesystem::path(argv[3]) / "record", "record",
                                 provider.base_url());
  std::cout << run.log;
  std::cout << fmt::format("\nrecorded: ok={} chat={} embedding_batches={} seconds={:.2f}\n", run.ok,
                           provider.chat_calls(), provider.embedding_calls(), run.seconds);
  if (!run.ok) std::cerr << "failed at step: " << run.failed_step << "\n";
  return run.ok ? 0 : 1;
}
