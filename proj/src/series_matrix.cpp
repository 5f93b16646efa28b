#include "ulocal/series_matrix.hpp"

#include "ulocal/errors.hpp"

namespace ulocal {

void TruncatedPoly::set_coeff(int d, const Rational& v) {
    if (d < 0) throw DomainError("TruncatedPoly::set_coeff: negative degree");
    if (d >= t_max_) {
        if (v != 0) truncated_ = true;
        return;
    }
    c_[d] = v;
}

TruncatedPoly TruncatedPoly::frobenius() const {
    TruncatedPoly out(p_, t_max_);
    out.truncated_ = truncated_;
    for (int d = 0; d < t_max_; ++d) {
        if (c_[d] == 0) continue;
        long long nd = static_cast<long long>(d) * p_;
        if (nd >= t_max_) {
            out.truncated_ = true;
        } else {
            out.c_[static_cast<int>(nd)] = c_[d];
        }
    }
    return out;
}

std::optional<int> TruncatedPoly::min_nonintegral_degree() const {
    for (int d = 0; d < t_max_; ++d) {
        if (c_[d] == 0) continue;
        if (rational_p_valuation(c_[d], p_) < 0) return d;
    }
    return std::nullopt;
}

TruncatedPoly operator+(const TruncatedPoly& f, const TruncatedPoly& g) {
    TruncatedPoly out(f.p_, f.t_max_);
    out.truncated_ = f.truncated_ || g.truncated_;
    for (int d = 0; d < f.t_max_; ++d) out.c_[d] = f.c_[d] + g.c_[d];
    return out;
}

TruncatedPoly operator*(const TruncatedPoly& f, const TruncatedPoly& g) {
    TruncatedPoly out(f.p_, f.t_max_);
    out.truncated_ = f.truncated_ || g.truncated_;
    for (int i = 0; i < f.t_max_; ++i) {
        if (f.c_[i] == 0) continue;
        for (int j = 0; j < g.t_max_; ++j) {
            if (g.c_[j] == 0) continue;
            if (i + j >= f.t_max_) {
                out.truncated_ = true;
                break;
            }
            out.c_[i + j] += f.c_[i] * g.c_[j];
        }
    }
    return out;
}

TruncatedSeriesMatrix TruncatedSeriesMatrix::frobenius() const {
    TruncatedSeriesMatrix out = *this;
    for (int i = 0; i < 4; ++i) out.e_[i] = e_[i].frobenius();
    return out;
}

std::optional<int> TruncatedSeriesMatrix::min_nonintegral_degree() const {
    std::optional<int> best;
    for (int i = 0; i < 4; ++i) {
        auto d = e_[i].min_nonintegral_degree();
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

bool TruncatedSeriesMatrix::truncated_tail() const {
    for (int i = 0; i < 4; ++i)
        if (e_[i].truncated_tail()) return true;
    return false;
}

TruncatedSeriesMatrix operator*(const TruncatedSeriesMatrix& A, const TruncatedSeriesMatrix& B) {
    long p = A.e_[0].p();
    int t_max = A.e_[0].t_max();
    TruncatedSeriesMatrix C(p, t_max);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            C.at(i, j) = A.at(i, 0) * B.at(0, j) + A.at(i, 1) * B.at(1, j);
    return C;
}

} // namespace ulocal
