#include "reopt/fitness.hpp"

#include <cmath>

namespace reopt {

std::string wide_to_string(WideInt v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Two's-complement minimum negates onto itself; digits still come out
    // right because we negate digit by digit below via unsigned math.
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

double FitnessValue::as_scalar() const {
    if (const double* d = std::get_if<double>(&v_)) return *d;
    throw ContractError("FitnessValue: not a scalar");
}

WideInt FitnessValue::as_exact() const {
    if (const WideInt* w = std::get_if<WideInt>(&v_)) return *w;
    throw ContractError("FitnessValue: not an exact integer");
}

FitnessValue::Lex FitnessValue::as_lex() const {
    if (const Lex* l = std::get_if<Lex>(&v_)) return *l;
    throw ContractError("FitnessValue: not a lexicographic pair");
}

double FitnessValue::primary_as_double() const {
    if (const double* d = std::get_if<double>(&v_)) return *d;
    if (const WideInt* w = std::get_if<WideInt>(&v_)) return static_cast<double>(*w);
    return static_cast<double>(std::get<Lex>(v_).primary);
}

std::string FitnessValue::to_string() const {
    if (const double* d = std::get_if<double>(&v_)) return std::to_string(*d);
    if (const WideInt* w = std::get_if<WideInt>(&v_)) return wide_to_string(*w);
    const Lex& l = std::get<Lex>(v_);
    return "(" + std::to_string(l.primary) + ", " + std::to_string(l.secondary) + ")";
}

namespace {

template <typename T>
int cmp3(T a, T b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

} // namespace

int compare(const FitnessValue& a, const FitnessValue& b) {
    if (a.v_.index() != b.v_.index())
        throw ContractError("FitnessValue: comparing values of different shapes");
    if (const double* d = std::get_if<double>(&a.v_))
        return cmp3(*d, std::get<double>(b.v_));
    if (const WideInt* w = std::get_if<WideInt>(&a.v_))
        return cmp3(*w, std::get<WideInt>(b.v_));
    const auto& la = std::get<FitnessValue::Lex>(a.v_);
    const auto& lb = std::get<FitnessValue::Lex>(b.v_);
    if (int c = cmp3(la.primary, lb.primary); c != 0) return c;
    return cmp3(la.secondary, lb.secondary);
}

bool fitness_better_or_equal(Direction dir, const FitnessValue& a, const FitnessValue& b) {
    const int c = compare(a, b);
    return dir == Direction::Maximize ? c >= 0 : c <= 0;
}

bool fitness_strictly_better(Direction dir, const FitnessValue& a, const FitnessValue& b) {
    const int c = compare(a, b);
    return dir == Direction::Maximize ? c > 0 : c < 0;
}

} // namespace reopt
