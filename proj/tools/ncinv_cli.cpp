// ncinv command-line front end. Talks to the library only through ncinv.h.
//
//   ncinv invert INPUT [--method M] [--ordering O] [--check] [--out PATH]
//   ncinv verify --seed N [--identities SET,...] [--ring R] [--trials N]
//                [--bound N] [--size N] [--fail-fast] [--out PATH]
//   ncinv expand INPUT [--order K] [--side S] [--ordering O] [--out PATH]
//
// Exit status: 0 success, 1 verification or --check failure, 2 error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ncinv.h"

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("NCINV_LOG");
  if (!env) return LogLevel::Error;
  const std::string v = env;
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Error;
}

void log(LogLevel level, const std::string& msg) {
  if (level <= log_level()) std::cerr << "ncinv: " << msg << "\n";
}

struct MatrixDeleter {
  void operator()(ncinv_matrix* m) const { ncinv_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<ncinv_matrix, MatrixDeleter>;

struct StringDeleter {
  void operator()(char* s) const { ncinv_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

// Thrown to unwind with a library status.
struct Failed {
  ncinv_status status;
};

void check(ncinv_status status) {
  if (status != NCINV_OK) throw Failed{status};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

MatrixPtr load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  ncinv_matrix* raw = nullptr;
  check(ncinv_matrix_parse(text.c_str(), &raw));
  return MatrixPtr(raw);
}

struct InvertArgs {
  std::string input, method, ordering = "acb", out;
  bool check = false;
};

int cmd_invert(const InvertArgs& args) {
  MatrixPtr m = load_matrix(args.input);
  ncinv_matrix* inv_raw = nullptr;
  char* json_raw = nullptr;
  check(ncinv_invert(m.get(), args.method.empty() ? nullptr : args.method.c_str(), args.ordering.c_str(),
                     &inv_raw, &json_raw));
  MatrixPtr inv(inv_raw);
  OwnedString doc(json_raw);
  if (args.check) {
    for (bool inverse_first : {true, false}) {
      ncinv_matrix* prod_raw = nullptr;
      check(inverse_first ? ncinv_matrix_multiply(inv.get(), m.get(), &prod_raw)
                          : ncinv_matrix_multiply(m.get(), inv.get(), &prod_raw));
      MatrixPtr prod(prod_raw);
      int ok = 0;
      check(ncinv_matrix_is_identity(prod.get(), &ok));
      if (!ok) {
        std::cerr << "ncinv: check failed: " << (inverse_first ? "X*A" : "A*X") << " is not the identity\n";
        return 1;
      }
    }
    log(LogLevel::Info, "check passed: X*A = A*X = I");
  }
  emit(doc.get(), args.out);
  return 0;
}

struct VerifyArgs {
  std::string identities = "five-way", ring = "quaternion", out;
  long long trials = 100;
  std::uint64_t seed = 0;
  unsigned bound = 5;
  std::size_t size = 4;
  unsigned threads = 0;
  bool fail_fast = false;
};

int cmd_verify(const VerifyArgs& args) {
  nlohmann::json spec{{"identities", args.identities}, {"ring", args.ring},   {"trials", args.trials},
                      {"seed", args.seed},             {"bound", args.bound}, {"block_size", args.size},
                      {"fail_fast", args.fail_fast},   {"threads", args.threads}};
  log(LogLevel::Debug, "campaign spec " + spec.dump());
  char* report_raw = nullptr;
  std::size_t failures = 0;
  check(ncinv_verify(spec.dump().c_str(), 1, &report_raw, &failures));
  OwnedString report(report_raw);
  emit(report.get(), args.out);
  log(LogLevel::Info, std::to_string(failures) + " failure(s)");
  return failures == 0 ? 0 : 1;
}

struct ExpandArgs {
  std::string input, side = "left", ordering = "acb", out;
  int order = -1;
};

int cmd_expand(const ExpandArgs& args) {
  MatrixPtr m = load_matrix(args.input);
  char* raw = nullptr;
  check(ncinv_expand(m.get(), args.order, args.side.c_str(), args.ordering.c_str(), &raw));
  OwnedString doc(raw);
  emit(doc.get(), args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact inversion of matrices with noncommuting entries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ncinv_version()));

  InvertArgs inv;
  auto* invert = app.add_subcommand("invert", "Invert a matrix read from a JSON document");
  invert->add_option("input", inv.input, "Matrix document")->required();
  invert->add_option("--method", inv.method, "Inversion route")
      ->check(CLI::IsMember({"left", "right", "left-prime", "right-prime", "gelfand", "triangular", "block"}));
  invert->add_option("--ordering", inv.ordering, "Determinant ordering")->check(CLI::IsMember({"acb", "abc"}));
  invert->add_flag("--check", inv.check, "Verify X*A = A*X = I before writing");
  invert->add_option("--out", inv.out, "Output path (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run a seeded randomized verification campaign");
  verify->add_option("--seed", ver.seed, "Campaign seed")->required();
  verify->add_option("--identities", ver.identities, "Comma-separated identity sets");
  verify->add_option("--ring", ver.ring, "scalar | quaternion | matrix:N | series:K[:base]");
  verify->add_option("--trials", ver.trials, "Number of trials");
  verify->add_option("--bound", ver.bound, "Numerator/denominator bound");
  verify->add_option("--size", ver.size, "Flat matrix size for the block set");
  verify->add_option("--threads", ver.threads, "Worker threads (0 = all cores)");
  verify->add_flag("--fail-fast", ver.fail_fast, "Stop at the first failing trial");
  verify->add_option("--out", ver.out, "Report path (default stdout)");

  ExpandArgs exp;
  auto* expand = app.add_subcommand("expand", "Order-by-order inverse of a 2x2 series matrix");
  expand->add_option("input", exp.input, "Matrix document with series entries")->required();
  expand->add_option("--order", exp.order, "Truncation order K (default: the document's)");
  expand->add_option("--side", exp.side, "Residue side")->check(CLI::IsMember({"left", "right"}));
  expand->add_option("--ordering", exp.ordering, "Determinant ordering")->check(CLI::IsMember({"acb", "abc"}));
  expand->add_option("--out", exp.out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (invert->parsed()) return cmd_invert(inv);
    if (verify->parsed()) return cmd_verify(ver);
    if (expand->parsed()) return cmd_expand(exp);
  } catch (const Failed& f) {
    std::cerr << "ncinv: " << ncinv_status_name(f.status) << ": " << ncinv_last_error() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ncinv: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
