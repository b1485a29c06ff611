#include "lattice_sight/serialize.hpp"

#include <cstdio>

namespace lsight {

namespace {

// Shortest-round-trip formatting is json's job; CSV and plain text use
// %.17g so the values survive a parse as well.
std::string double_field(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json factors_json(const Factorization& f) {
  Json arr = Json::array();
  for (const auto& pp : f) {
    arr.push_back(Json{{"prime", dec_string(pp.prime)}, {"exponent", pp.exponent}});
  }
  return arr;
}

}  // namespace

std::string dec_string(const BigInt& n) { return n.str(); }

Json to_json(const ZetaValue& z) {
  return Json{{"s", z.s}, {"value", z.value}, {"abs_error_bound", z.abs_error_bound}};
}

Json to_json(const Rational& a) {
  return Json{{"numerator", dec_string(a.num)}, {"denominator", dec_string(a.den)}};
}

Json to_json(const DensityReport& rep) {
  return Json{{"b", rep.b},
              {"N", rep.N},
              {"invisible_count", rep.invisible_count},
              {"visible_count", rep.visible_count},
              {"total", rep.total},
              {"observed_invisible_proportion", rep.observed_invisible_proportion},
              {"predicted_visible_proportion", rep.predicted_visible_proportion},
              {"predicted_invisible_proportion", rep.predicted_invisible_proportion},
              {"method", method_name(rep.method)}};
}

Json to_json(const std::vector<DensityReport>& rows) {
  Json arr = Json::array();
  for (const auto& rep : rows) arr.push_back(to_json(rep));
  return arr;
}

Json to_json(const Forest& f) {
  Json j{{"b", f.b},
         {"anchor", Json{{"r", dec_string(f.anchor.r)}, {"s", dec_string(f.anchor.s)}}},
         {"n", f.n},
         {"m", f.m}};
  if (f.r_modulus) j["r_modulus"] = dec_string(*f.r_modulus);
  if (f.s_modulus) j["s_modulus"] = dec_string(*f.s_modulus);
  return j;
}

Json to_json(const WitnessGrid& w) {
  Json j{{"cols", w.cols}, {"rows", w.rows}};
  // Rows are listed bottom-up, matching cell indexing.
  Json rows = Json::array();
  for (std::uint64_t r = 0; r < w.rows; ++r) {
    Json row = Json::array();
    for (std::uint64_t i = 0; i < w.cols; ++i) {
      const Witness& cell = w.at(i, r);
      row.push_back(Json{{"ggcd", dec_string(cell.value)}, {"factors", factors_json(cell.factors)}});
    }
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  return j;
}

Json to_json(const SearchResult& res) {
  Json forests = Json::array();
  for (const Forest& f : res.forests) forests.push_back(to_json(f));
  return Json{{"distance_sq", res.distance_sq}, {"forests", std::move(forests)}};
}

std::string density_csv_header() {
  return "b,N,invisible_count,visible_count,total,observed_invisible_proportion,"
         "predicted_visible_proportion,predicted_invisible_proportion,method";
}

std::string density_csv_row(const DensityReport& rep) {
  std::string row;
  row += std::to_string(rep.b);
  row += ',';
  row += std::to_string(rep.N);
  row += ',';
  row += std::to_string(rep.invisible_count);
  row += ',';
  row += std::to_string(rep.visible_count);
  row += ',';
  row += std::to_string(rep.total);
  row += ',';
  row += double_field(rep.observed_invisible_proportion);
  row += ',';
  row += double_field(rep.predicted_visible_proportion);
  row += ',';
  row += double_field(rep.predicted_invisible_proportion);
  row += ',';
  row += method_name(rep.method);
  return row;
}

std::string density_plain(const DensityReport& rep) {
  std::string out;
  out += "b = " + std::to_string(rep.b) + ", N = " + std::to_string(rep.N) + " (" +
         method_name(rep.method) + ")\n";
  out += "  invisible: " + std::to_string(rep.invisible_count) + " / " +
         std::to_string(rep.total) + " = " + double_field(rep.observed_invisible_proportion) +
         "\n";
  out += "  predicted visible / invisible: " + double_field(rep.predicted_visible_proportion) +
         " / " + double_field(rep.predicted_invisible_proportion) + "\n";
  return out;
}

}  // namespace lsight
