#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lattice_sight/forest.hpp"
#include "lattice_sight/visibility.hpp"
#include "lattice_sight/zeta.hpp"

namespace lsight {

// Field order is part of the output contract, hence ordered_json; big
// integers travel as decimal strings so consumers never round them.
using Json = nlohmann::ordered_json;

std::string dec_string(const BigInt& n);

Json to_json(const ZetaValue& z);
Json to_json(const Rational& a);
Json to_json(const DensityReport& rep);
Json to_json(const std::vector<DensityReport>& rows);
Json to_json(const Forest& f);
Json to_json(const WitnessGrid& w);
Json to_json(const SearchResult& res);

std::string density_csv_header();
std::string density_csv_row(const DensityReport& rep);

// Fixed-layout text form of a report list, one line per exponent.
std::string density_plain(const DensityReport& rep);

}  // namespace lsight
