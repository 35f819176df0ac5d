#include "discrim/povm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "discrim/rng.hpp"

namespace discrim {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kHermTol = 1e-10;
constexpr double kEigenFloor = -1e-10;
constexpr double kCompletenessTol = 1e-9;

std::size_t expected_length(Layout layout, std::size_t outcomes, std::size_t dim) {
    return layout == Layout::general ? outcomes * dim * dim : dim * dim;
}

}  // namespace

Layout parse_layout(const std::string& name) {
    if (name == "general") return Layout::general;
    if (name == "observable") return Layout::observable;
    throw std::invalid_argument("unknown layout '" + name + "' (expected general|observable)");
}

std::string to_string(Layout layout) {
    return layout == Layout::general ? "general" : "observable";
}

ControlVector::ControlVector(CVector entries, Layout layout, std::size_t outcomes,
                             std::size_t dim)
    : entries_(std::move(entries)), layout_(layout), outcomes_(outcomes), dim_(dim) {
    if (dim_ == 0 || outcomes_ == 0) {
        throw std::invalid_argument("ControlVector: outcomes and dimension must be positive");
    }
    if (layout_ == Layout::observable && outcomes_ != dim_) {
        throw std::invalid_argument("ControlVector: observable layout needs outcomes == dim");
    }
    if (static_cast<std::size_t>(entries_.size()) != expected_length(layout_, outcomes_, dim_)) {
        throw std::invalid_argument("ControlVector: entry count does not match layout");
    }
    if (entries_.isZero(0.0)) {
        throw DegenerateControlError("ControlVector: all entries are zero");
    }
}

ControlVector ControlVector::general(CVector entries, std::size_t outcomes, std::size_t dim) {
    return ControlVector(std::move(entries), Layout::general, outcomes, dim);
}

ControlVector ControlVector::observable(CVector entries, std::size_t dim) {
    return ControlVector(std::move(entries), Layout::observable, dim, dim);
}

ControlVector ControlVector::random(Layout layout, std::size_t outcomes, std::size_t dim,
                                    RngStream& rng) {
    const auto n = expected_length(layout, outcomes, dim);
    CVector entries(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < entries.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        entries(i) = Complex(re, im);
    }
    return ControlVector(std::move(entries), layout, outcomes, dim);
}

ControlVector ControlVector::with_entries(CVector entries) const {
    return ControlVector(std::move(entries), layout_, outcomes_, dim_);
}

CMatrix ControlVector::as_matrix() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    const Eigen::Index rows = layout_ == Layout::general ? static_cast<Eigen::Index>(outcomes_) * d : d;
    CMatrix m(rows, d);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = entries_(r * d + c);
        }
    }
    return m;
}

CMatrix qr_isometry(const CMatrix& z) {
    const Eigen::Index rows = z.rows();
    const Eigen::Index cols = z.cols();
    if (cols == 0 || rows < cols) {
        throw std::invalid_argument("qr_isometry: need a tall or square matrix");
    }
    const double scale = z.norm();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DegenerateControlError("qr_isometry: control matrix is zero or not finite");
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    const CMatrix& packed = qr.matrixQR();
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Complex rjj = packed(j, j);
        const double mag = std::abs(rjj);
        if (mag <= kRankTol * scale) {
            throw DegenerateControlError("qr_isometry: control matrix is rank deficient");
        }
        q.col(j) *= rjj / mag;
    }
    return q;
}

Povm povm_from_control(const ControlVector& z) {
    if (z.layout() != Layout::general) {
        throw std::invalid_argument("povm_from_control: expected general layout");
    }
    const CMatrix s = qr_isometry(z.as_matrix());
    const auto d = static_cast<Eigen::Index>(z.dim());
    Povm povm;
    povm.effects.reserve(z.outcomes());
    for (std::size_t i = 0; i < z.outcomes(); ++i) {
        const auto block = s.middleRows(static_cast<Eigen::Index>(i) * d, d);
        povm.effects.emplace_back(block.adjoint() * block);
    }
    return povm;
}

Povm observable_from_control(const ControlVector& z) {
    if (z.layout() != Layout::observable) {
        throw std::invalid_argument("observable_from_control: expected observable layout");
    }
    const CMatrix q = qr_isometry(z.as_matrix());
    Povm povm;
    povm.effects.reserve(z.dim());
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        povm.effects.emplace_back(q.col(i) * q.col(i).adjoint());
    }
    return povm;
}

Povm povm_for(const ControlVector& z) {
    return z.layout() == Layout::general ? povm_from_control(z) : observable_from_control(z);
}

PovmReport validate_povm(const Povm& povm) {
    PovmReport report;
    if (povm.effects.empty()) {
        report.completeness_deviation = 1.0;
        return report;
    }
    const auto d = povm.effects.front().rows();
    CMatrix total = CMatrix::Zero(d, d);
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& e : povm.effects) {
        if (e.rows() != d || e.cols() != d) {
            report.completeness_deviation = std::numeric_limits<double>::infinity();
            return report;
        }
        total += e;
        report.hermiticity_deviation = std::max(report.hermiticity_deviation, hermiticity_deviation(e));
        report.min_eigenvalue = std::min(report.min_eigenvalue, min_hermitian_eigenvalue(e));
    }
    report.completeness_deviation = max_abs_deviation(total, CMatrix::Identity(d, d));
    report.ok = report.hermiticity_deviation <= kHermTol && report.min_eigenvalue >= kEigenFloor &&
                report.completeness_deviation <= kCompletenessTol;
    return report;
}

ControlVector control_from_basis(const CMatrix& basis, Layout layout) {
    const auto d = basis.rows();
    if (d == 0 || basis.cols() != d) {
        throw std::invalid_argument("control_from_basis: basis must be square");
    }
    if (max_abs_deviation(basis.adjoint() * basis, CMatrix::Identity(d, d)) > 1e-10) {
        throw std::invalid_argument("control_from_basis: basis is not unitary");
    }
    const auto n = static_cast<std::size_t>(d);
    if (layout == Layout::observable) {
        CVector entries(d * d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                entries(r * d + c) = basis(r, c);
            }
        }
        return ControlVector::observable(std::move(entries), n);
    }
    // Stack the projectors P_i = u_i u_i^dagger; sum_i P_i^dagger P_i = I, so the
    // stack is already an isometry and each block reproduces P_i as an effect.
    CVector entries(d * d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const CMatrix p = basis.col(i) * basis.col(i).adjoint();
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                entries((i * d + r) * d + c) = p(r, c);
            }
        }
    }
    return ControlVector::general(std::move(entries), n, n);
}

}  // namespace discrim
