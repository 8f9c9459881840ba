#ifndef ELLIPTIKA_CMAT_HPP
#define ELLIPTIKA_CMAT_HPP

#include <algorithm>
#include <cassert>
#include <complex>
#include <vector>

#include "elliptika/errors.hpp"

namespace elliptika {

using cx = std::complex<double>;

// Small dense complex matrix, row-major. Sizes here stay below a few
// hundred, so no BLAS; operator* skips exact zeros of the right factor,
// which matters because most matrices in this code are weight-sparse.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, cx(0.0)) {}

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    CMat& operator+=(const CMat& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMat& operator*=(cx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cx s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        CMat c(a.rows_, b.cols_);
        for (int k = 0; k < b.rows_; ++k)
            for (int j = 0; j < b.cols_; ++j) {
                const cx v = b(k, j);
                if (v == cx(0.0)) continue;
                for (int i = 0; i < a.rows_; ++i) c(i, j) += a(i, k) * v;
            }
        return c;
    }

    std::vector<cx> apply(const std::vector<cx>& v) const {
        assert(int(v.size()) == cols_);
        std::vector<cx> out(rows_, cx(0.0));
        for (int i = 0; i < rows_; ++i) {
            cx s = 0.0;
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cx> a_;
};

inline double max_abs(const std::vector<cx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace elliptika

#endif
