#include "ncinv.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ncinv/campaign.hpp"
#include "ncinv/codec.hpp"

struct ncinv_matrix {
  ncinv::FlatMatrix m;
};

namespace {

using namespace ncinv;

thread_local std::string g_last_error;

ncinv_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return NCINV_ERR_PARSE;
    case ErrorCode::NotInvertible: return NCINV_ERR_NOT_INVERTIBLE;
    case ErrorCode::BadDimension: return NCINV_ERR_BAD_DIMENSION;
    case ErrorCode::MixedRingKinds: return NCINV_ERR_MIXED_RING_KINDS;
    case ErrorCode::RegimeViolation: return NCINV_ERR_REGIME_VIOLATION;
    case ErrorCode::SamplingExhausted: return NCINV_ERR_SAMPLING_EXHAUSTED;
    case ErrorCode::BlockSingular: return NCINV_ERR_BLOCK_SINGULAR;
    case ErrorCode::BadInput: return NCINV_ERR_BAD_INPUT;
    case ErrorCode::InvalidArgument: return NCINV_ERR_INVALID_ARGUMENT;
  }
  return NCINV_ERR_INTERNAL;
}

template <typename Fn>
ncinv_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return NCINV_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    g_last_error = e.what();
    return NCINV_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NCINV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCINV_ERR_INTERNAL;
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Inverted {
  FlatMatrix inverse;
  Json doc;
};

Inverted invert_block(const FlatMatrix& m) {
  const BlockInverse r = block_inverse(block_from_flat(m));
  FlatMatrix x = block_to_flat(r.inverse);
  Json doc{{"ring", m.entries[0].context().descriptor()},
           {"method", "block"},
           {"size", m.n},
           {"inverse", encode_entries(x)},
           {"pivot_trace", encode_trace(r.trace)}};
  return {std::move(x), std::move(doc)};
}

Inverted invert_2x2(const FlatMatrix& flat, Method method, Ordering ordering) {
  const Matrix2 A = to_matrix2(flat);
  if (method == Method::LeftResidue && ordering == Ordering::DeltaABC) method = Method::LeftResiduePrime;
  if (method == Method::RightResidue && ordering == Ordering::DeltaABC) method = Method::RightResiduePrime;
  const Inverse2 inv = inverse(A, method);
  Json doc{{"ring", A.context().descriptor()}, {"method", method_name(method)}};
  if (const auto route = residue_route(method)) {
    const auto [side, ord] = *route;
    doc["ordering"] = ordering_name(ord);
    doc["determinant"] = encode_element(determinant(A, ord));
    doc["commutative_inverse"] = encode_entries(commutative_inverse(A, side, ord));
    doc["residue"] = encode_entries(residue(A, side, ord).m);
    doc["decomposition"] = encode_entries(decomposition(A, side, ord).m);
  }
  doc["inverse"] = encode_entries(inv.m);
  return {to_flat(inv.m), std::move(doc)};
}

}  // namespace

extern "C" {

const char* ncinv_version(void) { return "1.0.0"; }

const char* ncinv_status_name(ncinv_status status) {
  switch (status) {
    case NCINV_OK: return "OK";
    case NCINV_ERR_PARSE: return "ParseError";
    case NCINV_ERR_NOT_INVERTIBLE: return "NotInvertible";
    case NCINV_ERR_BAD_DIMENSION: return "BadDimension";
    case NCINV_ERR_MIXED_RING_KINDS: return "MixedRingKinds";
    case NCINV_ERR_REGIME_VIOLATION: return "RegimeViolation";
    case NCINV_ERR_SAMPLING_EXHAUSTED: return "SamplingExhausted";
    case NCINV_ERR_BLOCK_SINGULAR: return "BlockSingular";
    case NCINV_ERR_BAD_INPUT: return "BadInput";
    case NCINV_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case NCINV_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* ncinv_last_error(void) { return g_last_error.c_str(); }

void ncinv_string_free(char* s) { std::free(s); }

ncinv_status ncinv_matrix_parse(const char* json, ncinv_matrix** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new ncinv_matrix{parse_matrix(json)};
  });
}

void ncinv_matrix_free(ncinv_matrix* m) { delete m; }

ncinv_status ncinv_matrix_to_json(const ncinv_matrix* m, char** out_json) {
  return guarded([&] {
    require(m, "matrix");
    require(out_json, "out_json");
    *out_json = duplicate(dump(encode_matrix(m->m)));
  });
}

ncinv_status ncinv_matrix_size(const ncinv_matrix* m, size_t* out_n) {
  return guarded([&] {
    require(m, "matrix");
    require(out_n, "out_n");
    *out_n = m->m.n;
  });
}

ncinv_status ncinv_matrix_multiply(const ncinv_matrix* x, const ncinv_matrix* y, ncinv_matrix** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = new ncinv_matrix{x->m * y->m};
  });
}

ncinv_status ncinv_matrix_is_identity(const ncinv_matrix* m, int* out_flag) {
  return guarded([&] {
    require(m, "matrix");
    require(out_flag, "out_flag");
    *out_flag = m->m == FlatMatrix::identity(m->m.entries[0].context(), m->m.n) ? 1 : 0;
  });
}

ncinv_status ncinv_invert(const ncinv_matrix* m, const char* method, const char* ordering,
                          ncinv_matrix** out_inverse, char** out_json) {
  return guarded([&] {
    require(m, "matrix");
    const std::string method_str = method ? method : (m->m.n == 2 ? "gelfand" : "block");
    const auto ord = parse_ordering(ordering ? ordering : "acb");
    if (!ord) throw Error(ErrorCode::InvalidArgument, std::string("unknown ordering '") + ordering + "'");
    Inverted result = [&] {
      if (method_str == "block") return invert_block(m->m);
      const auto parsed = parse_method(method_str);
      if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown method '" + method_str + "'");
      return invert_2x2(m->m, *parsed, *ord);
    }();
    if (out_json) *out_json = duplicate(dump(result.doc));
    if (out_inverse) *out_inverse = new ncinv_matrix{std::move(result.inverse)};
  });
}

ncinv_status ncinv_expand(const ncinv_matrix* m, int order, const char* side, const char* ordering,
                          char** out_json) {
  return guarded([&] {
    require(m, "matrix");
    require(out_json, "out_json");
    const auto s = parse_side(side ? side : "left");
    if (!s) throw Error(ErrorCode::InvalidArgument, std::string("unknown side '") + side + "'");
    const auto ord = parse_ordering(ordering ? ordering : "acb");
    if (!ord) throw Error(ErrorCode::InvalidArgument, std::string("unknown ordering '") + ordering + "'");
    DeformedMatrix2 A(to_matrix2(m->m));
    if (order >= 0) A = truncate(A, static_cast<std::size_t>(order));
    const NeumannResult r = neumann_inverse(A, *s, *ord);
    Json doc{{"ring", A.matrix().context().descriptor()},
             {"side", side_name(*s)},
             {"ordering", ordering_name(*ord)},
             {"order", A.order()},
             {"residue_order", residue_order(A, *s, *ord)},
             {"classical_inverse", encode_entries(classical_inverse(A, *ord))},
             {"orders", encode_ledger(r.ledger).at("orders")},
             {"inverse", encode_entries(r.inverse.m)}};
    *out_json = duplicate(dump(doc));
  });
}

ncinv_status ncinv_verify(const char* spec_json, int include_duration, char** out_report,
                          size_t* out_failures) {
  return guarded([&] {
    require(spec_json, "spec_json");
    Json spec_doc;
    try {
      spec_doc = Json::parse(spec_json);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid campaign JSON: ") + e.what());
    }
    const VerificationReport report = run_campaign(campaign_from_json(spec_doc));
    if (out_failures) *out_failures = report.failures.size();
    if (out_report) *out_report = duplicate(dump(report.to_json(include_duration != 0)));
  });
}

}  // extern "C"
