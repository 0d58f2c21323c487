// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
//   acceptance [--cli PATH]
//
// The CLI path defaults to the one baked in at build time.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ncinv/blockinv.hpp"
#include "ncinv/perturb.hpp"
#include "oracles.hpp"

using namespace ncinv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::array<std::pair<Side, Ordering>, 4> kRoutes = {{{Side::Left, Ordering::DeltaACB},
                                                               {Side::Right, Ordering::DeltaACB},
                                                               {Side::Left, Ordering::DeltaABC},
                                                               {Side::Right, Ordering::DeltaABC}}};

std::string route_name(Side s, Ordering o) {
  return std::string(side_name(s)) + "/" + std::string(ordering_name(o));
}

// A sample on which all five closed forms are defined, plus their results.
struct Sample {
  Matrix2 A;
  std::vector<Matrix2> inverses;  // indexed like kEquivalentMethods
};

Matrix2 draw(Sampler& s, const RingContext& ring) {
  return make_matrix2(s.element(ring, 5), s.element(ring, 5), s.element(ring, 5), s.element(ring, 5));
}

// Redraws from the trial's own stream until every route is defined.
Sample admissible_sample(std::uint64_t seed, std::size_t trial, const RingContext& ring, std::size_t& rejected) {
  Sampler s(derive_seed(seed, trial));
  for (;;) {
    Sample out{draw(s, ring), {}};
    try {
      for (Method m : kEquivalentMethods) out.inverses.push_back(inverse(out.A, m).m);
      return out;
    } catch (const NotInvertible&) {
      ++rejected;
    }
  }
}

std::vector<Sample> samples(std::uint64_t seed, std::size_t n, const RingContext& ring, std::size_t& rejected) {
  std::vector<Sample> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) out.push_back(admissible_sample(seed, t, ring, rejected));
  return out;
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

Outcome five_way(const std::vector<Sample>& data) {
  Outcome o;
  for (std::size_t t = 0; t < data.size(); ++t)
    for (std::size_t k = 0; k + 1 < kEquivalentMethods.size(); ++k)
      if (!(data[t].inverses[k] == data[t].inverses.back()))
        fail(o, "trial " + std::to_string(t) + ": " + std::string(method_name(kEquivalentMethods[k])) +
                    " differs from gelfand");
  return o;
}

Outcome two_sided(const std::vector<Sample>& data) {
  Outcome o;
  for (std::size_t t = 0; t < data.size(); ++t)
    for (std::size_t k = 0; k < kEquivalentMethods.size(); ++k) {
      const Matrix2& X = data[t].inverses[k];
      if (!(X * data[t].A).is_identity() || !(data[t].A * X).is_identity())
        fail(o, "trial " + std::to_string(t) + ": " + std::string(method_name(kEquivalentMethods[k])));
    }
  return o;
}

Outcome residue_forms(const std::vector<Sample>& data) {
  Outcome o;
  for (std::size_t t = 0; t < data.size(); ++t) {
    const Matrix2& A = data[t].A;
    for (auto [side, ord] : kRoutes) {
      const Matrix2 B = residue(A, side, ord).m;
      if (!(B == residue_commutator_form(A, side, ord).m))
        fail(o, "trial " + std::to_string(t) + ": " + route_name(side, ord) + " commutator form differs");
      if (side == Side::Left && ord == Ordering::DeltaACB && !B.d.is_zero())
        fail(o, "trial " + std::to_string(t) + ": (B_L)22 != 0");
      if (side == Side::Right && ord == Ordering::DeltaABC && !B.a.is_zero())
        fail(o, "trial " + std::to_string(t) + ": (B'_R)11 != 0");
    }
  }
  return o;
}

Outcome factorization(const std::vector<Sample>& data) {
  Outcome o;
  for (std::size_t t = 0; t < data.size(); ++t) {
    const Matrix2& A = data[t].A;
    for (auto [side, ord] : kRoutes) {
      const Matrix2 T = decomposition(A, side, ord).m;
      const Matrix2 B = residue(A, side, ord).m;
      if (!((side == Side::Left ? T * A : A * T) == B))
        fail(o, "trial " + std::to_string(t) + ": " + route_name(side, ord) + " T does not factor B");
    }
    if (!(decomposition(A, Side::Left, Ordering::DeltaACB).m == left_decomposition_commutator_form(A).m))
      fail(o, "trial " + std::to_string(t) + ": printed forms of T_L differ");
  }
  return o;
}

Outcome all_of(std::initializer_list<std::pair<const char*, Outcome>> parts) {
  Outcome o;
  for (const auto& [name, part] : parts)
    if (!part.pass) fail(o, std::string(name) + ": " + part.detail);
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion_1_2(std::vector<Sample>& data, Outcome& second) {
  std::size_t rejected = 0;
  const auto start = Clock::now();
  data = samples(42, 1000, RingContext::quaternion(), rejected);
  Outcome o = five_way(data);
  const double secs = seconds_since(start);
  if (secs >= 60) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "1000 quaternion samples, " + std::to_string(rejected) + " redraws, " + std::to_string(secs) + " s";
  second = two_sided(data);
  if (second.pass) second.detail = "5 methods x 1000 samples, X*A = A*X = I";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  for (std::size_t r = 0; r < kRoutes.size(); ++r) {
    std::size_t rejected = 0;
    const auto data = samples(300 + r, 500, RingContext::quaternion(), rejected);
    const Outcome part = residue_forms(data);
    if (!part.pass) fail(o, part.detail);
  }
  if (o.pass) o.detail = "4 x 500 quaternion samples, structural zeros hold";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  for (std::uint64_t seed : {400, 401}) {
    std::size_t rejected = 0;
    const Outcome part = factorization(samples(seed, 500, RingContext::quaternion(), rejected));
    if (!part.pass) fail(o, part.detail);
  }
  if (o.pass) o.detail = "2 x 500 quaternion samples, T_L A = B_L, A T_R = B_R, both T_L forms agree";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  Sampler s(derive_seed(5, 0));
  std::size_t checked = 0;
  while (checked < 200) {
    Rational a = s.rational(5), b = s.rational(5), c = s.rational(5), d = s.rational(5);
    const Rational det = a * d - b * c;
    if (det == 0) continue;
    ++checked;
    const Matrix2 A = make_matrix2(oracle::quat(a), oracle::quat(b), oracle::quat(c), oracle::quat(d));
    // Classical adjugate inverse computed in plain rationals.
    const Matrix2 expected = make_matrix2(oracle::quat(d / det), oracle::quat(-b / det), oracle::quat(-c / det),
                                          oracle::quat(a / det));
    for (auto [side, ord] : kRoutes) {
      if (!residue(A, side, ord).m.is_zero()) fail(o, "nonzero residue " + route_name(side, ord));
      try {
        if (!decomposition(A, side, ord).m.is_zero()) fail(o, "nonzero decomposition " + route_name(side, ord));
      } catch (const NotInvertible& e) {
        // Closed forms invert individual entries, so only a zero entry excuses this.
        if (a != 0 && b != 0 && c != 0 && d != 0)
          fail(o, std::string("unexpected NotInvertible: ") + e.what());
      }
    }
    for (Method m : kEquivalentMethods) {
      try {
        if (!(inverse(A, m).m == expected)) fail(o, std::string(method_name(m)) + " differs from adjugate inverse");
      } catch (const NotInvertible&) {
        if (a != 0 && b != 0 && c != 0 && d != 0) fail(o, std::string(method_name(m)) + " rejected a generic sample");
      }
    }
  }
  if (o.pass) o.detail = "200 central samples";
  return o;
}

Outcome criterion_6() {
  std::size_t rejected = 0;
  const auto data = samples(6, 200, RingContext::matrix(3), rejected);
  Outcome o = all_of({{"five-way", five_way(data)},
                      {"two-sided", two_sided(data)},
                      {"residues", residue_forms(data)},
                      {"factorization", factorization(data)}});
  if (o.pass) o.detail = "200 M3(Q) samples, " + std::to_string(rejected) + " redraws";
  return o;
}

oracle::RationalMatrix to_rational(const FlatMatrix& m) {
  oracle::RationalMatrix r(m.n, std::vector<Rational>(m.n));
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r[i][j] = m.at(i, j).as_scalar();
  return r;
}

Outcome criterion_7() {
  Outcome o;
  const auto start = Clock::now();
  std::string pivots;
  for (std::size_t n : {4, 8}) {
    std::size_t pivoted = 0, total = 0;
    for (std::size_t t = 0; t < 100; ++t) {
      Sampler s(derive_seed(7000 + n, t));
      for (;;) {
        FlatMatrix m{n, {}};
        for (std::size_t k = 0; k < n * n; ++k) m.entries.emplace_back(s.rational(5));
        oracle::RationalMatrix expected;
        try {
          expected = oracle::bareiss_inverse(to_rational(m));
        } catch (const std::domain_error&) {
          continue;
        }
        ++total;
        try {
          const BlockInverse r = block_inverse(block_from_flat(m));
          if (!r.trace.empty()) ++pivoted;
          if (to_rational(block_to_flat(r.inverse)) != expected)
            fail(o, std::to_string(n) + "x" + std::to_string(n) + " trial " + std::to_string(t) + " differs");
        } catch (const Error& e) {
          fail(o, std::to_string(n) + "x" + std::to_string(n) + " trial " + std::to_string(t) + ": " + e.what());
        }
        break;
      }
    }
    if (pivoted * 100 > total)
      fail(o, std::to_string(n) + "x" + std::to_string(n) + ": " + std::to_string(pivoted) + " of " +
                  std::to_string(total) + " trials pivoted");
    pivots += (pivots.empty() ? "" : ", ") + std::to_string(pivoted) + " pivoted at " + std::to_string(n);
  }
  const double secs = seconds_since(start);
  if (secs >= 120) fail(o, "took " + std::to_string(secs) + " s");
  if (o.pass)
    o.detail = "2 x 100 flat matrices, " + pivots + ", " + std::to_string(secs) + " s";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const RingContext ring = RingContext::series(RingContext::matrix(2), 4);
  const Matrix2 id = Matrix2::identity(ring);
  for (std::size_t t = 0; t < 200; ++t) {
    Sampler s(derive_seed(8, t));
    const DeformedMatrix2 A = sample_regime_matrix(s, ring, 5);
    const Matrix2& M = A.matrix();
    // Order-0 entries are lambda * 1, so the classical inverse is the
    // adjugate of the lambdas, scaled onto the identity.
    auto lambda = [](const RingElement& e) { return coefficient(e, 0).as_matrix().at(0, 0); };
    const Rational a = lambda(M.a), b = lambda(M.b), c = lambda(M.c), d = lambda(M.d), det = a * d - b * c;
    const RingElement one = RingContext::matrix(2).one();
    const Matrix2 classical = make_matrix2(scale(d / det, one), scale(-b / det, one), scale(-c / det, one),
                                           scale(a / det, one));
    const std::string tag = "trial " + std::to_string(t) + ": ";
    for (auto [side, ord] : kRoutes) {
      const NeumannResult r = neumann_inverse(A, side, ord);
      if (!(r.ledger.orders.at(0) == classical)) fail(o, tag + "order-0 slice differs " + route_name(side, ord));
      if (!(M * r.inverse.m == id)) fail(o, tag + "A*X != I mod h^5 " + route_name(side, ord));
      std::size_t closed = 0;
      for (Method m : kEquivalentMethods) {
        try {
          if (!(closed_form_inverse(A, m).m == r.inverse.m)) fail(o, tag + std::string(method_name(m)) + " differs");
          ++closed;
        } catch (const NotInvertible&) {
        }
      }
      if (closed == 0) fail(o, tag + "no closed form defined");
      if (residue_order(A, side, ord) < 1) fail(o, tag + "residue order 0");
    }
  }
  if (o.pass) o.detail = "200 regime samples at K = 4";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const Matrix2 W = make_matrix2(oracle::qi(), oracle::qj(), oracle::qk(), oracle::q1());
  // Hamilton-table values: i*1 - k*j = i + i, i*1 - j*k = i - i.
  const Quaternion kj = oracle::product(oracle::qk().as_quaternion(), oracle::qj().as_quaternion());
  const Quaternion jk = oracle::product(oracle::qj().as_quaternion(), oracle::qk().as_quaternion());
  const RingElement delta = oracle::qi() - RingElement(kj), delta_prime = oracle::qi() - RingElement(jk);
  if (!(delta == oracle::quat(0, 2)) || !delta_prime.is_zero()) fail(o, "oracle values are not 2i and 0");
  if (!(determinant(W, Ordering::DeltaACB) == delta)) fail(o, "Delta != 2i");
  if (!determinant(W, Ordering::DeltaABC).is_zero()) fail(o, "Delta' != 0");
  for (Side side : {Side::Left, Side::Right}) {
    try {
      commutative_inverse(W, side, Ordering::DeltaABC);
      fail(o, "Delta' route accepted the witness");
    } catch (const NotInvertible& e) {
      if (e.subject() != "Delta'") fail(o, "wrong subject " + e.subject());
    }
    // Delta = 2i is invertible, so the unprimed commutative inverse exists.
    commutative_inverse(W, side, Ordering::DeltaACB);
  }
  // Where both orderings are defined they give the same inverse.
  std::size_t rejected = 0;
  for (const Sample& s : samples(9, 200, RingContext::quaternion(), rejected))
    for (auto [side, ord] : kRoutes)
      if (!(inverse(s.A, residue_method(side, ord)).m == s.inverses.back()))
        fail(o, "orderings disagree on a random sample");
  if (o.pass) o.detail = "Delta = 2i, Delta' = 0; 200 samples agree across orderings";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Drops the duration line from a pretty-printed report.
std::string without_duration(const std::string& text, bool& had_duration) {
  std::istringstream in(text);
  std::string line, out;
  had_duration = false;
  while (std::getline(in, line)) {
    if (line.find("\"duration_ms\"") != std::string::npos) {
      had_duration = true;
      continue;
    }
    out += line + "\n";
  }
  return out;
}

Outcome criterion_10(const std::string& cli) {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("ncinv_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("report" + std::to_string(run) + ".json");
    const std::string cmd = "\"" + cli + "\" verify --seed 42 --identities five-way,two-sided,residue-closed-form" +
                            " --ring quaternion --trials 200 --out \"" + out.string() + "\"";
    const int status = std::system(cmd.c_str());
    if (status != 0) fail(o, "run " + std::to_string(run) + " exited with " + std::to_string(status));
    reports.push_back(slurp(out));
  }
  std::filesystem::remove_all(dir);
  bool d0 = false, d1 = false;
  const std::string r0 = without_duration(reports[0], d0), r1 = without_duration(reports[1], d1);
  if (!d0 || !d1) fail(o, "report lacks a duration field");
  if (r0.empty() || r0 != r1) fail(o, "reports differ");
  if (o.pass) o.detail = "two runs, " + std::to_string(r0.size()) + " identical bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = NCINV_CLI_PATH;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail << std::endl;
  };

  std::vector<Sample> data;
  Outcome second;
  report(1, "five-way equivalence", [&] { return criterion_1_2(data, second); });
  report(2, "two-sided identity", [&] { return second; });
  report(3, "residue closed forms", criterion_3);
  report(4, "decomposition factorization", criterion_4);
  report(5, "commutative collapse", criterion_5);
  report(6, "matrix-ring entries", criterion_6);
  report(7, "block recursion", criterion_7);
  report(8, "perturbative regime", criterion_8);
  report(9, "ordering witness", criterion_9);
  report(10, "CLI determinism", [&] { return criterion_10(cli); });
  std::cout << (failed ? "FAILED: " : "ALL PASSED: ") << 10 - failed << "/10" << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
