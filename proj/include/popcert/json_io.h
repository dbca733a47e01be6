// JSON interchange for polynomials, problems, SDPs and certificates.
#pragma once

#include <string_view>
#include <variant>

#include "json.hpp"

#include "popcert/exactcert.h"
#include "popcert/reductions.h"
#include "popcert/sdp.h"
#include "popcert/sos.h"

namespace popcert {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError carrying the byte offset.
Json ParseJson(std::string_view text);

Json ToJson(const Polynomial& p);
Polynomial PolyFromJson(const Json& j);

Json ToJson(const Pop& pop);
Pop PopFromJson(const Json& j);

Json ToJson(const StableInstance& si);
StableInstance StableFromJson(const Json& j);

Json ToJson(const SdpProblem& problem);
SdpProblem SdpProblemFromJson(const Json& j);
Json ToJson(const SdpSolution& sol);

Json ToJson(const SosTemplate& t);
SosTemplate TemplateFromJson(const Json& j);

/// Certificate documents carry "form": "numeric" | "exact".
Json ToJson(const SosCertificate& cert);
Json ToJson(const RationalCertificate& cert);
using AnyCertificate = std::variant<SosCertificate, RationalCertificate>;
AnyCertificate CertificateFromJson(const Json& j);

/// Reads a list of polynomials: either a bare array or {"polys": [...]}.
std::vector<Polynomial> PolyListFromJson(const Json& j);

}  // namespace popcert
