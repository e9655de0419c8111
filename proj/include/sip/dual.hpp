#ifndef SIP_DUAL_HPP
#define SIP_DUAL_HPP

#include <cmath>
#include <complex>

namespace sip {

/// Forward-mode dual number v + d*eps with eps^2 = 0. T is double or std::complex<double>.
template <class T>
struct Dual {
    T v{};
    T d{};

    constexpr Dual() = default;
    constexpr Dual(T value) : v(value), d(T(0)) {}  // NOLINT: implicit lift of constants
    constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
    template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
    constexpr Dual(double value) : v(T(value)), d(T(0)) {}  // NOLINT

    static constexpr Dual variable(T value) { return {value, T(1)}; }

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) {
        d = (d * o.v - v * o.d) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }

template <class T> Dual<T> operator+(Dual<T> a, double s) { a.v += T(s); return a; }
template <class T> Dual<T> operator+(double s, Dual<T> a) { a.v += T(s); return a; }
template <class T> Dual<T> operator-(Dual<T> a, double s) { a.v -= T(s); return a; }
template <class T> Dual<T> operator-(double s, const Dual<T>& a) { return {T(s) - a.v, -a.d}; }
template <class T> Dual<T> operator*(Dual<T> a, double s) { a.v *= T(s); a.d *= T(s); return a; }
template <class T> Dual<T> operator*(double s, Dual<T> a) { return a * s; }
template <class T> Dual<T> operator/(Dual<T> a, double s) { a.v /= T(s); a.d /= T(s); return a; }
template <class T> Dual<T> operator/(double s, const Dual<T>& a) { return Dual<T>(T(s)) / a; }

template <class T> Dual<T> sin(const Dual<T>& a) { using std::sin, std::cos; return {sin(a.v), a.d * cos(a.v)}; }
template <class T> Dual<T> cos(const Dual<T>& a) { using std::sin, std::cos; return {cos(a.v), -a.d * sin(a.v)}; }
template <class T> Dual<T> tan(const Dual<T>& a) {
    using std::tan;
    const T t = tan(a.v);
    return {t, a.d * (T(1) + t * t)};
}
template <class T> Dual<T> sinh(const Dual<T>& a) { using std::sinh, std::cosh; return {sinh(a.v), a.d * cosh(a.v)}; }
template <class T> Dual<T> cosh(const Dual<T>& a) { using std::sinh, std::cosh; return {cosh(a.v), a.d * sinh(a.v)}; }
template <class T> Dual<T> tanh(const Dual<T>& a) {
    using std::tanh;
    const T t = tanh(a.v);
    return {t, a.d * (T(1) - t * t)};
}
template <class T> Dual<T> exp(const Dual<T>& a) { using std::exp; const T e = exp(a.v); return {e, a.d * e}; }
template <class T> Dual<T> log(const Dual<T>& a) { using std::log; return {log(a.v), a.d / a.v}; }
template <class T> Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    return {s, a.d / (T(2) * s)};
}
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
    using std::pow;
    return {pow(a.v, p), a.d * T(p) * pow(a.v, p - 1.0)};
}

/// Value part for both plain scalars and duals.
inline double value_of(double x) { return x; }
inline std::complex<double> value_of(std::complex<double> x) { return x; }
template <class T> T value_of(const Dual<T>& x) { return x.v; }

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

}  // namespace sip

#endif  // SIP_DUAL_HPP
