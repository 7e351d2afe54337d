#include "om/rational.hpp"

#include "om/errors.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace om {

std::string rat_to_string(const Rat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& text) {
    if (text.empty()) fail(errc::schema_violation, "empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(text));
        }
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) fail(errc::schema_violation, "rational with zero denominator: " + text);
        return Rat(num, den);
    } catch (const error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::schema_violation, "malformed rational literal: " + text);
    }
}

BigInt common_denominator(const std::vector<Rat>& values) {
    BigInt lcm = 1;
    for (const Rat& v : values) {
        lcm = boost::integer::lcm(lcm, BigInt(boost::multiprecision::denominator(v)));
    }
    return lcm;
}

BigInt scale_to_integer(const Rat& r, const BigInt& scale) {
    const Rat scaled = r * Rat(scale);
    if (boost::multiprecision::denominator(scaled) != 1) {
        fail(errc::invariant_violation, "rational does not scale to an integer");
    }
    return BigInt(boost::multiprecision::numerator(scaled));
}

double rat_to_double(const Rat& r) {
    return r.convert_to<double>();
}

} // namespace om
