#pragma once

#include <complex>
#include <type_traits>
#include <utility>

namespace hdual {

enum class scalar_kind { real, complex };

template <class T>
struct is_complex_scalar : std::false_type {};

template <class T>
struct is_complex_scalar<std::complex<T>> : std::true_type {};

template <class T>
inline constexpr bool is_complex_scalar_v = is_complex_scalar<T>::value;

template <class T>
concept jet_scalar = std::is_floating_point_v<T> || is_complex_scalar_v<T>;

template <jet_scalar T>
inline constexpr scalar_kind scalar_kind_of = is_complex_scalar_v<T> ? scalar_kind::complex : scalar_kind::real;

// Mixed-kind arithmetic promotes real to complex, never the other way.
template <class A, class B>
struct promote {
    using type = decltype(std::declval<A>() + std::declval<B>());
};

template <class A, class B>
using promote_t = typename promote<A, B>::type;

} // namespace hdual
