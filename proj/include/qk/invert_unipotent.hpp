#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace qk {

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Given A with valuation(A x) > valuation(x), returns x -> sum_{m=0}^{L} A^m x,
// the inverse of (id - A) at truncation order L. Every application of A during
// evaluation is checked against the order-raising contract.
//
// T needs operator+ and a free function valuation(const T&) that returns a
// value beyond L for zero elements.
template <class T>
std::function<T(const T&)> invert_unipotent(std::function<T(const T&)> A, int L) {
    return [A = std::move(A), L](const T& x) {
        T sum = x;
        T term = x;
        for (int m = 1; m <= L; ++m) {
            const int before = valuation(term);
            if (before > L) break;
            T next = A(term);
            const int after = valuation(next);
            if (after <= L && after <= before)
                throw ContractViolation("invert_unipotent: operator does not raise the lambda order (" +
                                        std::to_string(before) + " -> " + std::to_string(after) + ")");
            sum = sum + next;
            term = std::move(next);
        }
        return sum;
    };
}

}  // namespace qk
