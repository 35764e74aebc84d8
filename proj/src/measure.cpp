#include "radial/measure.hpp"

#include <cmath>
#include <sstream>

namespace radial {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    for (const auto& atom : atoms_) {
        const double radius = std::abs(atom.s);
        if (!std::isfinite(radius) || !std::isfinite(std::abs(atom.w)) ||
            radius >= 1.0 - kBoundaryMargin) {
            std::ostringstream os;
            os << "measure atom " << atom.s << " is not strictly inside the disk |s| < 1 - "
               << kBoundaryMargin;
            throw InvalidArgument(os.str());
        }
    }
}

DiscreteMeasure DiscreteMeasure::delta(Complex s, Complex w)
{
    return DiscreteMeasure({Atom{s, w}});
}

double DiscreteMeasure::max_radius() const noexcept
{
    double r = 0.0;
    for (const auto& atom : atoms_)
        r = std::max(r, std::abs(atom.s));
    return r;
}

double DiscreteMeasure::total_variation() const noexcept
{
    double total = 0.0;
    for (const auto& atom : atoms_)
        total += std::abs(atom.w);
    return total;
}

Complex DiscreteMeasure::moment(std::size_t n) const
{
    Complex sum{0.0, 0.0};
    for (const auto& atom : atoms_)
        sum += atom.w * ipow(atom.s, n);
    return sum;
}

} // namespace radial
