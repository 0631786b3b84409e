#include "pam/poly.hpp"

#include <algorithm>

namespace pam {

MPoly MPoly::constant(int nvars, const Q& c) {
    MPoly r(nvars);
    r.add_term(Exponent(nvars, 0), c);
    return r;
}

MPoly MPoly::var(int nvars, int i) {
    MPoly r(nvars);
    Exponent e(nvars, 0);
    e.at(i) = 1;
    r.add_term(e, 1);
    return r;
}

void MPoly::add_term(const Exponent& e, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    r.nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + o * Q(-1); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(std::max(nvars_, o.nvars_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponent e(r.nvars_, 0);
            for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
            for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly MPoly::operator*(const Q& c) const {
    MPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

MPoly MPoly::pow(int k) const {
    MPoly r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Q MPoly::eval(const std::vector<Q>& x) const {
    Q s = 0;
    for (const auto& [e, c] : terms_) {
        Q m = c;
        for (size_t i = 0; i < e.size(); ++i) m *= qpow(x.at(i), e[i]);
        s += m;
    }
    return s;
}

Q MPoly::eval(const std::vector<long>& x) const {
    std::vector<Q> q(x.begin(), x.end());
    return eval(q);
}

MPoly MPoly::rescaled(const std::vector<Q>& base, const Q& scale) const {
    std::vector<MPoly> sub;
    for (int i = 0; i < nvars_; ++i) sub.push_back(constant(nvars_, base.at(i)) + var(nvars_, i) * scale);
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        MPoly m = constant(nvars_, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) m = m * sub[i].pow(e[i]);
        r = r + m;
    }
    return r;
}

long MPoly::min_vp(long p) const {
    long v = kInfinity;
    for (const auto& [e, c] : terms_) v = std::min(v, vp(c, p));
    return v;
}

}  // namespace pam
