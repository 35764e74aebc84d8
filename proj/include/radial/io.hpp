#pragma once

#include "radial/fock.hpp"
#include "radial/hankel.hpp"
#include "radial/integral.hpp"
#include "radial/multiplier.hpp"
#include "radial/symbol.hpp"

#include "json.hpp"

#include <ostream>
#include <string_view>

namespace radial {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "radial-mult/1";

/// Parses "0.5", "-0.5", "0.3+0.4i", "0.4i", "-i". Throws InvalidArgument.
Complex parse_complex(std::string_view text);

/// Accepts a number, [re, im], {"re": .., "im": ..} or a string for parse_complex.
Complex complex_from_json(const Json& j);
Json complex_to_json(Complex z);

Json symbol_to_json(const RadialSymbol& sym);
RadialSymbol symbol_from_json(const Json& j);

/// Either a list of {"s", "w"} atoms, or {"c": .., "atoms": [..]}.
Representation measure_from_json(const Json& j);
Json measure_to_json(Complex c, const DiscreteMeasure& nu);

/// {"factors": [d_1, ..], "max_len": N}.
FockSpec space_from_json(const Json& j);
Json space_to_json(const FockSpec& spec);

Json report_to_json(const HankelReport& r);
Json report_to_json(const CPrimeReport& r);
Json report_to_json(const EigenReport& r);
Json report_to_json(const CsBound& r);
Json report_to_json(const MembershipCheck& r);
Json report_to_json(const DoublingCheck& r);

/// matrix,index,sigma
void write_singular_values_csv(std::ostream& out, const HankelReport& r);
/// xi,eta,case,k,l,expected_re,expected_im,residual
void write_eigen_csv(std::ostream& out, const EigenReport& r);
/// row,col,re,im in column-major order.
void write_operator_csv(std::ostream& out, const FockOperator& a);

} // namespace radial
