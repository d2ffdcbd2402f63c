#pragma once

#include "cm/rational.hpp"

#include <concepts>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace cm {

// Value plus exact gradient over the 2N coordinates (p1..pN, q1..qN).
// An empty gradient stands for a constant. Nest as Jet<Jet<T>> for
// second derivatives.
template <class T>
struct Jet {
    T v;
    std::vector<T> d;

    Jet() : v(0) {}
    Jet(const T& value) : v(value) {}
    Jet(T value, std::vector<T> grad) : v(std::move(value)), d(std::move(grad)) {}

    template <class U>
        requires(!std::same_as<std::remove_cvref_t<U>, Jet> &&
                 !std::same_as<std::remove_cvref_t<U>, T> && std::constructible_from<T, const U&>)
    Jet(const U& value) : v(value) {}

    static Jet variable(const T& value, std::size_t dim, std::size_t index)
    {
        std::vector<T> g(dim, T(0));
        g[index] = T(1);
        return Jet(value, std::move(g));
    }

    std::size_t dim() const { return d.size(); }
    T partial(std::size_t i) const { return i < d.size() ? d[i] : T(0); }

    Jet operator-() const
    {
        Jet r(T(-v));
        r.d.reserve(d.size());
        for (const T& x : d) r.d.push_back(T(-x));
        return r;
    }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(const Jet& a, const Jet& b)
    {
        Jet r(T(a.v + b.v));
        std::size_t n = std::max(a.d.size(), b.d.size());
        r.d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.d.size() && i < b.d.size())
                r.d.push_back(T(a.d[i] + b.d[i]));
            else
                r.d.push_back(i < a.d.size() ? a.d[i] : b.d[i]);
        }
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b)
    {
        Jet r(T(a.v - b.v));
        std::size_t n = std::max(a.d.size(), b.d.size());
        r.d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.d.size() && i < b.d.size())
                r.d.push_back(T(a.d[i] - b.d[i]));
            else
                r.d.push_back(i < a.d.size() ? a.d[i] : T(-b.d[i]));
        }
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r(T(a.v * b.v));
        std::size_t n = std::max(a.d.size(), b.d.size());
        r.d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            T x(0);
            if (i < b.d.size()) x += T(a.v * b.d[i]);
            if (i < a.d.size()) x += T(b.v * a.d[i]);
            r.d.push_back(std::move(x));
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b)
    {
        T inv = T(1) / b.v;
        Jet r(T(a.v * inv));
        std::size_t n = std::max(a.d.size(), b.d.size());
        r.d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            T x(0);
            if (i < a.d.size()) x += a.d[i];
            if (i < b.d.size()) x -= T(r.v * b.d[i]);
            r.d.push_back(T(x * inv));
        }
        return r;
    }

    friend bool operator==(const Jet& a, const Jet& b)
    {
        if (!(a.v == b.v)) return false;
        std::size_t n = std::max(a.d.size(), b.d.size());
        for (std::size_t i = 0; i < n; ++i)
            if (!(a.partial(i) == b.partial(i))) return false;
        return true;
    }
};

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet<T>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

// True only for the zero jet (value and every partial vanish).
template <class T>
bool is_zero(const Jet<T>& x)
{
    if (!is_zero(x.v)) return false;
    for (const T& g : x.d)
        if (!is_zero(g)) return false;
    return true;
}

template <class T>
double to_double(const Jet<T>& x)
{
    return to_double(x.v);
}

// Drops one level of differentiation: Jet<Jet<T>> -> Jet<T> keeping value
// and first partials.
template <class T>
Jet<T> truncate(const Jet<Jet<T>>& x)
{
    Jet<T> r(x.v.v);
    r.d.reserve(x.v.d.size());
    for (const T& g : x.v.d) r.d.push_back(g);
    return r;
}

// Scalar value at the bottom of a jet tower.
template <class T>
const auto& base_value(const T& x)
{
    if constexpr (is_jet_v<T>)
        return base_value(x.v);
    else
        return x;
}

template <class T>
T ipow(T base, unsigned e)
{
    T r(1);
    while (e) {
        if (e & 1u) r = T(r * base);
        e >>= 1u;
        if (e) base = T(base * base);
    }
    return r;
}

}  // namespace cm
