#pragma once

#include <string>

#include "json.hpp"
#include "iwa/cyclotomic_eval.hpp"
#include "iwa/group_ring.hpp"
#include "iwa/pollack.hpp"

namespace iwa {

using Json = nlohmann::json;

/// {"p", "N", "v": int or "inf", "u": decimal string, "prec"}. "prec" defaults to N.
/// A zero has "u": "0" and "v" its absolute precision.
Json encode(const PadicScalar& x);
/// {"a", "b", "s"}.
Json encode(const QuadExtScalar& x);
/// {"p", "n", "ring": "base" | "quad", "coeffs": [[scalar, ...], ...]}, coeffs[sigma][r].
Json encode(const GroupRingElem<PadicScalar>& f);
Json encode(const GroupRingElem<QuadExtScalar>& f);
/// {"p", "m", "coeffs": [scalar, ...]}.
Json encode(const CyclotomicScalar<PadicScalar>& x);
Json encode(const CyclotomicScalar<QuadExtScalar>& x);
/// {"d", "m", "e", "r"}.
Json encode(const CharacterSpec& chi);
/// {"k", "eps", "L1", "L2", "twists": [{"r", "L1", "L2"}, ...]}.
Json encode(const AdmissiblePair& pair);
/// {"k", "eps", "Lplus", "Lminus", "plus_levels", "minus_levels"}.
Json encode(const PMDecomposition& pm);

// Decoders throw MalformedInput on any structural or range problem.
PadicScalar decode_padic(const Json& j);
QuadExtScalar decode_quad(const Json& j);
GroupRingElem<PadicScalar> decode_base_element(const Json& j);
/// Accepts "quad" elements, and "base" elements promoted with alpha^2 = s.
GroupRingElem<QuadExtScalar> decode_quad_element(const Json& j, const PadicScalar* s = nullptr);
CharacterSpec decode_character(const Json& j);
AdmissiblePair decode_pair(const Json& j);
PMDecomposition decode_pm(const Json& j);

/// "-" reads stdin / writes stdout.
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace iwa
