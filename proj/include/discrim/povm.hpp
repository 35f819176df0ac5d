#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "discrim/linalg.hpp"

namespace discrim {

class RngStream;

/// Raised when a control vector maps to a rank-deficient matrix, so no
/// isometry (and no POVM) is defined for it.
class DegenerateControlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Layout { general, observable };

Layout parse_layout(const std::string& name);
std::string to_string(Layout layout);

/// Complex control parameters of the measurement device.
///
/// general(n, d): n*d*d entries filling the (n*d) x d matrix Z row-major.
/// observable(d): d*d entries filling a d x d matrix row-major.
class ControlVector {
public:
    ControlVector(CVector entries, Layout layout, std::size_t outcomes, std::size_t dim);

    static ControlVector general(CVector entries, std::size_t outcomes, std::size_t dim);
    static ControlVector observable(CVector entries, std::size_t dim);

    // Entries with independent standard normal real and imaginary parts.
    static ControlVector random(Layout layout, std::size_t outcomes, std::size_t dim,
                                RngStream& rng);

    const CVector& entries() const { return entries_; }
    Layout layout() const { return layout_; }
    std::size_t outcomes() const { return outcomes_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.size()); }

    // Same layout, new entries. Length must match.
    ControlVector with_entries(CVector entries) const;

    // Row-major reshape: (n*d) x d for general, d x d for observable.
    CMatrix as_matrix() const;

private:
    CVector entries_;
    Layout layout_;
    std::size_t outcomes_;
    std::size_t dim_;
};

struct Povm {
    std::vector<CMatrix> effects;

    std::size_t size() const { return effects.size(); }
    std::size_t dim() const { return effects.empty() ? 0 : static_cast<std::size_t>(effects.front().rows()); }
};

struct PovmReport {
    double completeness_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double hermiticity_deviation = 0.0;
    bool ok = false;
};

// Thin QR with the R diagonal made real and non-negative; Q is returned.
CMatrix qr_isometry(const CMatrix& z);

Povm povm_from_control(const ControlVector& z);
Povm observable_from_control(const ControlVector& z);

// Dispatches on the layout.
Povm povm_for(const ControlVector& z);

PovmReport validate_povm(const Povm& povm);

// Control vector whose POVM is the projective measurement onto the columns
// of the unitary `basis` (outcome i <-> column i).
ControlVector control_from_basis(const CMatrix& basis, Layout layout);

}  // namespace discrim
