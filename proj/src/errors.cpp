#include "radial/core.hpp"

#include <sstream>

namespace radial {

namespace {

std::string tail_message(Complex c1, Complex c2)
{
    std::ostringstream os;
    os << "doubled symbol has a 2-periodic tail (c1=" << c1 << ", c2=" << c2
       << "); use double_with_parity_tail";
    return os.str();
}

} // namespace

UnsupportedTail::UnsupportedTail(Complex c1, Complex c2)
    : Error(tail_message(c1, c2)), c1_(c1), c2_(c2)
{
}

} // namespace radial
