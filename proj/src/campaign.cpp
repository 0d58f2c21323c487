#include "ncinv/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace ncinv {

namespace {

constexpr const char* kIdentitySets[] = {"five-way",       "two-sided",            "residue-closed-form",
                                         "factorization",  "commutative-collapse", "block",
                                         "perturb"};

constexpr std::pair<Side, Ordering> kRoutes[] = {{Side::Left, Ordering::DeltaACB},
                                                 {Side::Right, Ordering::DeltaACB},
                                                 {Side::Left, Ordering::DeltaABC},
                                                 {Side::Right, Ordering::DeltaABC}};

std::string route_label(Side side, Ordering ord) {
  return std::string(side_name(side)) + "/" + std::string(ordering_name(ord));
}

// Raised inside a trial when the drawn sample violates a precondition.
struct Rejected {};

struct TrialContext {
  const CampaignSpec& spec;
  const std::string& identity;
  std::size_t trial;
  Json input;
  std::vector<Failure> failures;
  PivotTrace trace;

  Failure& fail(std::string check) {
    Failure f;
    f.trial = trial;
    f.identity = identity;
    f.check = std::move(check);
    f.input = input;
    failures.push_back(std::move(f));
    return failures.back();
  }

  // Records the first differing entry of lhs and rhs.
  void expect_equal(const FlatMatrix& lhs, const FlatMatrix& rhs, const std::string& check,
                    std::vector<std::string> methods = {}) {
    for (std::size_t i = 0; i < lhs.n; ++i)
      for (std::size_t j = 0; j < lhs.n; ++j)
        if (!(lhs.at(i, j) == rhs.at(i, j))) {
          Failure& f = fail(check);
          f.methods = std::move(methods);
          f.entry = std::pair{i, j};
          f.discrepancy = encode_element(lhs.at(i, j) - rhs.at(i, j));
          return;
        }
  }

  void expect_equal(const Matrix2& lhs, const Matrix2& rhs, const std::string& check,
                    std::vector<std::string> methods = {}) {
    expect_equal(to_flat(lhs), to_flat(rhs), check, std::move(methods));
  }

  void expect(bool ok, const std::string& check, const std::string& detail) {
    if (!ok) fail(check).discrepancy = detail;
  }
};

// Any NotInvertible raised while preparing a trial marks the sample as
// outside the preconditions.
template <typename Fn>
auto prepare(Fn&& fn) {
  try {
    return fn();
  } catch (const NotInvertible&) {
    throw Rejected{};
  }
}

Matrix2 draw_matrix2(Sampler& sampler, const CampaignSpec& spec) {
  return Matrix2{sampler.element(spec.ring, spec.bound), sampler.element(spec.ring, spec.bound),
                 sampler.element(spec.ring, spec.bound), sampler.element(spec.ring, spec.bound)};
}

struct AllInverses {
  std::vector<Inverse2> routes;  // kEquivalentMethods order
};

AllInverses all_inverses(const Matrix2& A) {
  return prepare([&] {
    AllInverses out;
    for (Method m : kEquivalentMethods) out.routes.push_back(inverse(A, m));
    return out;
  });
}

void check_five_way(TrialContext& t, Sampler& sampler) {
  const Matrix2 A = draw_matrix2(sampler, t.spec);
  t.input = encode_matrix(A);
  const AllInverses inv = all_inverses(A);
  const Inverse2& gelfand = inv.routes.back();
  for (std::size_t k = 0; k + 1 < inv.routes.size(); ++k) {
    const std::string name(method_name(inv.routes[k].method));
    t.expect_equal(inv.routes[k].m, gelfand.m, name + " vs gelfand", {name, "gelfand"});
  }
}

void check_two_sided(TrialContext& t, Sampler& sampler) {
  const Matrix2 A = draw_matrix2(sampler, t.spec);
  t.input = encode_matrix(A);
  const AllInverses inv = all_inverses(A);
  const Matrix2 id = Matrix2::identity(A.context());
  for (const Inverse2& x : inv.routes) {
    const std::string name(method_name(x.method));
    t.expect_equal(x.m * A, id, name + ": X*A = I", {name});
    t.expect_equal(A * x.m, id, name + ": A*X = I", {name});
  }
}

void check_residue_closed_form(TrialContext& t, Sampler& sampler) {
  const Matrix2 A = draw_matrix2(sampler, t.spec);
  t.input = encode_matrix(A);
  std::vector<std::pair<ResidueMatrix, ResidueMatrix>> pairs = prepare([&] {
    std::vector<std::pair<ResidueMatrix, ResidueMatrix>> out;
    for (auto [side, ord] : kRoutes)
      out.emplace_back(residue(A, side, ord), residue_commutator_form(A, side, ord));
    return out;
  });
  for (const auto& [direct, closed] : pairs)
    t.expect_equal(direct.m, closed.m, "residue " + route_label(direct.side, direct.ordering) +
                                           ": definition vs commutator form");
  // B_L under Delta has a zero (2,2) entry, B'_R under Delta' a zero (1,1) entry.
  t.expect(pairs[0].first.m.d.is_zero(), "(B_L)_22 = 0", to_string(pairs[0].first.m.d));
  t.expect(pairs[3].first.m.a.is_zero(), "(B'_R)_11 = 0", to_string(pairs[3].first.m.a));
}

void check_factorization(TrialContext& t, Sampler& sampler) {
  const Matrix2 A = draw_matrix2(sampler, t.spec);
  t.input = encode_matrix(A);
  struct Parts {
    std::vector<DecompositionMatrix> t;
    std::vector<ResidueMatrix> b;
    std::vector<Matrix2> ci;
    DecompositionMatrix left_commutator;
    Matrix2 inverse;
  };
  const Parts p = prepare([&] {
    std::vector<DecompositionMatrix> ts;
    std::vector<ResidueMatrix> bs;
    std::vector<Matrix2> cis;
    for (auto [side, ord] : kRoutes) {
      ts.push_back(decomposition(A, side, ord));
      bs.push_back(residue(A, side, ord));
      cis.push_back(commutative_inverse(A, side, ord));
    }
    return Parts{std::move(ts), std::move(bs), std::move(cis), left_decomposition_commutator_form(A),
                 inverse(A, Method::Gelfand).m};
  });
  for (std::size_t k = 0; k < p.t.size(); ++k) {
    const auto& T = p.t[k];
    const std::string label = route_label(T.side, T.ordering);
    if (T.side == Side::Left)
      t.expect_equal(T.m * A, p.b[k].m, "T*A = B " + label);
    else
      t.expect_equal(A * T.m, p.b[k].m, "A*T = B " + label);
    t.expect_equal(T.m, p.ci[k] - p.inverse, "T = cA^-1 - A^-1 " + label);
  }
  t.expect_equal(p.t[0].m, p.left_commutator.m, "T_L plain vs commutator form");
}

void check_commutative_collapse(TrialContext& t, Sampler& sampler) {
  std::array<Rational, 4> q;
  for (auto& v : q) v = sampler.rational(t.spec.bound);
  const RingContext& ring = t.spec.ring;
  const Matrix2 A{ring.embed(q[0]), ring.embed(q[1]), ring.embed(q[2]), ring.embed(q[3])};
  t.input = encode_matrix(A);
  const Rational det = q[0] * q[3] - q[1] * q[2];
  if (sgn(det) == 0) throw Rejected{};
  const Matrix2 classical{ring.embed(q[3] / det), ring.embed(-q[1] / det), ring.embed(-q[2] / det),
                          ring.embed(q[0] / det)};
  const AllInverses inv = all_inverses(A);
  const Matrix2 zero = Matrix2::zero(ring);
  for (auto [side, ord] : kRoutes) {
    const std::string label = route_label(side, ord);
    t.expect_equal(residue(A, side, ord).m, zero, "residue " + label + " = 0");
    t.expect_equal(decomposition(A, side, ord).m, zero, "decomposition " + label + " = 0");
  }
  for (const Inverse2& x : inv.routes) {
    const std::string name(method_name(x.method));
    t.expect_equal(x.m, classical, name + " vs classical adjugate", {name, "adjugate"});
  }
}

void check_block(TrialContext& t, Sampler& sampler) {
  const std::size_t n = t.spec.block_size;
  SquareMatrix raw = SquareMatrix::zero(n);
  for (auto& e : raw.entries) e = sampler.rational(t.spec.bound);
  const RingElement as_element(raw);
  if (!is_invertible(as_element)) throw Rejected{};
  FlatMatrix A{n, {}};
  for (const auto& e : raw.entries) A.entries.emplace_back(e);
  t.input = encode_matrix(A);

  BlockInverse result{BlockMatrix(RingContext::scalar().zero()), {}};
  try {
    result = block_inverse(block_from_flat(A));
  } catch (const BlockSingular& e) {
    t.fail("block_inverse succeeds").discrepancy = e.what();
    return;
  }
  t.trace = result.trace;
  const FlatMatrix X = block_to_flat(result.inverse);
  const RingElement reference_element = invert(as_element);
  const SquareMatrix& reference = reference_element.as_matrix();
  FlatMatrix expected{n, {}};
  for (const auto& e : reference.entries) expected.entries.emplace_back(e);
  const FlatMatrix id = FlatMatrix::identity(RingContext::scalar(), n);
  t.expect_equal(X, expected, "block vs Gauss-Jordan", {"block", "gauss-jordan"});
  t.expect_equal(X * A, id, "block: X*A = I", {"block"});
  t.expect_equal(A * X, id, "block: A*X = I", {"block"});
}

void check_perturb(TrialContext& t, Sampler& sampler) {
  const DeformedMatrix2 A = sample_regime_matrix(sampler, t.spec.ring, t.spec.bound, t.spec.retry_budget);
  t.input = encode_matrix(A.matrix());
  const Matrix2& M = A.matrix();
  std::vector<NeumannResult> neumann;
  for (auto [side, ord] : kRoutes) neumann.push_back(neumann_inverse(A, side, ord));
  const AllInverses closed = all_inverses(M);
  const Matrix2 classical = classical_inverse(A);
  const Matrix2 id = Matrix2::identity(M.context());
  const std::size_t order = A.order();

  for (std::size_t k = 0; k < neumann.size(); ++k) {
    const auto [side, ord] = kRoutes[k];
    const std::string label = "neumann " + route_label(side, ord);
    const Matrix2& X = neumann[k].inverse.m;
    t.expect_equal(neumann[k].ledger.orders.at(0), classical, label + ": order 0 = classical inverse");
    t.expect_equal(M * X, id, label + ": A*X = I mod h^(K+1)");
    t.expect_equal(X * M, id, label + ": X*A = I mod h^(K+1)");
    for (const Inverse2& c : closed.routes) {
      const std::string name(method_name(c.method));
      t.expect_equal(X, c.m, label + " vs closed form " + name, {route_label(side, ord), name});
    }
    const std::size_t r = residue_order(A, side, ord);
    t.expect(r >= 1, label + ": residue order >= 1", std::to_string(r));
    Matrix2 power = id;
    const Matrix2 minus_b = -residue(M, side, ord).m;
    for (std::size_t j = 0; j <= order; ++j) power = power * minus_b;
    t.expect(power.is_zero(), label + ": (-B)^(K+1) = 0", "nonzero");
  }
}

using CheckFn = void (*)(TrialContext&, Sampler&);

CheckFn check_for(const std::string& identity) {
  if (identity == "five-way") return check_five_way;
  if (identity == "two-sided") return check_two_sided;
  if (identity == "residue-closed-form") return check_residue_closed_form;
  if (identity == "factorization") return check_factorization;
  if (identity == "commutative-collapse") return check_commutative_collapse;
  if (identity == "block") return check_block;
  if (identity == "perturb") return check_perturb;
  return nullptr;
}

struct TrialResult {
  std::size_t rejected = 0;
  std::vector<Failure> failures;
  PivotTrace trace;
};

TrialResult run_trial(const CampaignSpec& spec, std::size_t trial) {
  TrialResult result;
  Sampler sampler(derive_seed(spec.seed, trial));
  for (const std::string& identity : spec.identities) {
    const CheckFn check = check_for(identity);
    for (unsigned attempt = 0;; ++attempt) {
      if (attempt == spec.retry_budget)
        throw Error(ErrorCode::SamplingExhausted,
                    "trial " + std::to_string(trial) + " of '" + identity + "': no admissible sample after " +
                        std::to_string(spec.retry_budget) + " draws");
      TrialContext ctx{spec, identity, trial, Json(), {}, {}};
      try {
        check(ctx, sampler);
      } catch (const Rejected&) {
        ++result.rejected;
        continue;
      }
      for (auto& f : ctx.failures) result.failures.push_back(std::move(f));
      for (auto& p : ctx.trace) result.trace.push_back(std::move(p));
      break;
    }
  }
  return result;
}

}  // namespace

std::vector<std::string> known_identity_sets() {
  return {std::begin(kIdentitySets), std::end(kIdentitySets)};
}

void validate(const CampaignSpec& spec) {
  if (spec.trials < 1) throw Error(ErrorCode::InvalidArgument, "trial count must be at least 1");
  if (spec.bound < 1) throw Error(ErrorCode::InvalidArgument, "coefficient bound must be at least 1");
  if (spec.identities.empty()) throw Error(ErrorCode::InvalidArgument, "no identity set selected");
  const auto kind = spec.ring.kind();
  for (const auto& id : spec.identities) {
    if (!check_for(id)) throw Error(ErrorCode::InvalidArgument, "unknown identity set '" + id + "'");
    if (id == "block") {
      if (kind != RingContext::Kind::Scalar)
        throw Error(ErrorCode::InvalidArgument, "identity set 'block' needs --ring scalar");
      if (spec.block_size < 1 || (spec.block_size & (spec.block_size - 1)) != 0)
        throw Error(ErrorCode::InvalidArgument, "block size must be a power of two");
    }
    if (id == "perturb" && kind != RingContext::Kind::Series)
      throw Error(ErrorCode::InvalidArgument, "identity set 'perturb' needs --ring series:K");
  }
}

VerificationReport run_campaign(const CampaignSpec& spec) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();

  const std::size_t n = spec.trials;
  std::vector<std::optional<TrialResult>> results(n);
  std::vector<std::exception_ptr> errors(n);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_after{kNone};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || i > stop_after.load()) return;
      try {
        results[i] = run_trial(spec, i);
        if (spec.fail_fast && !results[i]->failures.empty()) {
          std::size_t cur = stop_after.load();
          while (i < cur && !stop_after.compare_exchange_weak(cur, i)) {
          }
        }
      } catch (...) {
        errors[i] = std::current_exception();
        std::size_t cur = stop_after.load();
        while (i < cur && !stop_after.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  const std::size_t last = std::min(n - 1, stop_after.load());
  for (std::size_t i = 0; i <= last; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);

  VerificationReport report;
  for (std::size_t k = 0; k < spec.identities.size(); ++k)
    report.campaign += (k ? "+" : "") + spec.identities[k];
  report.identities = spec.identities;
  report.ring = spec.ring.descriptor();
  report.seed = spec.seed;
  report.bound = spec.bound;
  report.trials_requested = n;
  report.trials_run = last + 1;
  for (std::size_t i = 0; i <= last; ++i) {
    TrialResult& r = *results[i];
    report.trials_rejected += r.rejected;
    for (auto& f : r.failures) report.failures.push_back(std::move(f));
    if (!r.trace.empty()) report.pivots.push_back({i, std::move(r.trace)});
  }
  report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json VerificationReport::to_json(bool include_duration) const {
  Json failures_json = Json::array();
  for (const Failure& f : failures) {
    Json j{{"trial", f.trial}, {"identity", f.identity}, {"check", f.check}};
    if (!f.methods.empty()) j["methods"] = f.methods;
    if (f.entry) j["entry"] = Json::array({f.entry->first, f.entry->second});
    j["discrepancy"] = f.discrepancy;
    j["input"] = f.input;
    failures_json.push_back(std::move(j));
  }
  Json out{{"campaign", campaign},
           {"identities", identities},
           {"ring", ring},
           {"seed", seed},
           {"bound", bound},
           {"trials_requested", trials_requested},
           {"trials_run", trials_run},
           {"trials_rejected", trials_rejected},
           {"passed", passed()},
           {"failures", std::move(failures_json)}};
  if (std::find(identities.begin(), identities.end(), "block") != identities.end()) {
    Json traces = Json::array();
    for (const auto& p : pivots) traces.push_back(Json{{"trial", p.trial}, {"trace", encode_trace(p.trace)}});
    out["pivoted_trials"] = pivots.size();
    out["pivot_traces"] = std::move(traces);
  }
  if (include_duration) out["duration_ms"] = duration_ms;
  return out;
}

CampaignSpec campaign_from_json(const Json& j) {
  try {
    CampaignSpec spec;
    if (!j.contains("seed")) throw Error(ErrorCode::InvalidArgument, "a seed is required");
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("identities")) {
      const Json& ids = j.at("identities");
      spec.identities.clear();
      if (ids.is_string()) {
        std::string s = ids.get<std::string>();
        std::size_t pos = 0;
        while (pos <= s.size()) {
          const std::size_t comma = std::min(s.find(',', pos), s.size());
          if (comma > pos) spec.identities.push_back(s.substr(pos, comma - pos));
          pos = comma + 1;
        }
      } else {
        spec.identities = ids.get<std::vector<std::string>>();
      }
    }
    if (j.contains("ring")) spec.ring = RingContext::parse(j.at("ring").get<std::string>());
    if (j.contains("trials")) {
      const long long t = j.at("trials").get<long long>();
      if (t < 1) throw Error(ErrorCode::InvalidArgument, "trial count must be at least 1");
      spec.trials = static_cast<std::size_t>(t);
    }
    if (j.contains("bound")) spec.bound = j.at("bound").get<std::uint32_t>();
    if (j.contains("block_size")) spec.block_size = j.at("block_size").get<std::size_t>();
    if (j.contains("fail_fast")) spec.fail_fast = j.at("fail_fast").get<bool>();
    if (j.contains("threads")) spec.threads = j.at("threads").get<unsigned>();
    if (j.contains("retry_budget")) spec.retry_budget = j.at("retry_budget").get<unsigned>();
    validate(spec);
    return spec;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad campaign spec: ") + e.what());
  }
}

}  // namespace ncinv
