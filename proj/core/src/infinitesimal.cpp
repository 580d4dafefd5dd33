#include "equivapprox/infinitesimal.hpp"

#include <sstream>

namespace eqa {

// Trailing zeros are trimmed, so std::map's lexicographic order on keys is
// the dominance order: begin() is the leading monomial.

InfinitesimalScalar::InfinitesimalScalar(const Scalar& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

InfinitesimalScalar InfinitesimalScalar::symbol(std::size_t index) {
    InfinitesimalScalar s;
    Monomial m(index + 1, 0);
    m[index] = 1;
    s.terms_.emplace(m, 1);
    return s;
}

void InfinitesimalScalar::add_term(Monomial m, const Scalar& c) {
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int InfinitesimalScalar::sign() const { return terms_.empty() ? 0 : sgn(terms_.begin()->second); }

Scalar InfinitesimalScalar::standard_part() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar InfinitesimalScalar::substitute(const std::vector<Scalar>& values) const {
    Scalar out;
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] > 0 && i >= values.size()) throw InputError("missing value for infinitesimal symbol");
            for (int k = 0; k < m[i]; ++k) t *= values[i];
        }
        out += t;
    }
    return out;
}

InfinitesimalScalar InfinitesimalScalar::operator-() const {
    InfinitesimalScalar r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

InfinitesimalScalar& InfinitesimalScalar::operator+=(const InfinitesimalScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

InfinitesimalScalar& InfinitesimalScalar::operator-=(const InfinitesimalScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

InfinitesimalScalar InfinitesimalScalar::operator*(const InfinitesimalScalar& o) const {
    InfinitesimalScalar r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m(std::max(m1.size(), m2.size()), 0);
            for (std::size_t i = 0; i < m1.size(); ++i) m[i] += m1[i];
            for (std::size_t i = 0; i < m2.size(); ++i) m[i] += m2[i];
            r.add_term(std::move(m), c1 * c2);
        }
    return r;
}

InfinitesimalScalar& InfinitesimalScalar::operator*=(const Scalar& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

InfinitesimalScalar& InfinitesimalScalar::operator/=(const Scalar& c) {
    if (c == 0) throw std::domain_error("division by zero");
    for (auto& [m, v] : terms_) v /= c;
    return *this;
}

std::string InfinitesimalScalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Scalar a = abs(c);
        if (a != 1 || m.empty()) os << a.get_str();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            os << "s" << i;
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

}  // namespace eqa
