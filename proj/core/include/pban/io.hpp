#ifndef PBAN_IO_HPP
#define PBAN_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "pban/census.hpp"
#include "pban/fenchel.hpp"
#include "pban/forge.hpp"

namespace pban {

using Json = nlohmann::ordered_json;

// Rationals cross the boundary as "p/q" strings; no floats anywhere.
Json to_json(const Scalar& x);
Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const PolyBall& b);
Json to_json(const Space& s);
Json to_json(const LinMap& m);
Json to_json(const TypePres& t);
Json to_json(const KFn& f);
Json to_json(const DistanceBracket& d);
Json to_json(const AmalgamOut& a);
Json to_json(const ConditionReport& r);
Json to_json(const MaxTestReport& r);
Json to_json(const IsolationReport& r);
Json to_json(const LedgerEntry& e);
Json to_json(const ChainState& cs);
Json to_json(const CertifyReport& r);
Json to_json(const SeparatedFamily& f);
Json to_json(const NetReport& r);
Json to_json(const DensityProbe& p);
Json to_json(const Face& f);

Scalar scalar_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Mat mat_from_json(const Json& j);
PolyBall ball_from_json(const Json& j);
Space space_from_json(const Json& j);
LinMap linmap_from_json(const Json& j);
TypePres typepres_from_json(const Json& j);
KFn kfn_from_json(const Json& j);
ChainState chain_from_json(const Json& j);
Catalog catalog_from_json(const Json& j);
std::vector<AvoidBall> avoid_from_json(const Json& j);

/// Parses a whole document; wraps nlohmann parse failures in ParseError.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

/// CSV with "p/q" cells, one row per line.
std::string csv_matrix(const std::vector<std::vector<Scalar>>& rows);
std::string csv_row(const std::vector<Scalar>& row);

}  // namespace pban

#endif
