#include "equivapprox/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace eqa {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
        throw InputError("malformed rational \"" + std::string(text) + "\"");

    mpz_class n(std::string(num), 10);
    mpz_class d = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in rational \"" + std::string(text) + "\"");
    if (text.front() == '-') n = -n;
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

}  // namespace eqa
