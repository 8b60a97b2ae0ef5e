#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qhist {

// Basis-index convention, used by every module:
//
//   * A register is a canonically ordered list of labeled qubits: System
//     qubits first, then A-ancillas, then X-ancillas, each group by
//     ascending index.
//   * The basis index of an n-qubit register packs one bit per qubit, with
//     the bit VALUE equal to the qubit state (bit 1 <-> |1>).
//   * The first qubit in canonical order occupies the MOST significant bit,
//     so |s>|a> over (S0, A0) has basis index 2s + a.
//   * Printed 2x2 matrices in the domain literature list the |1> component
//     first; transcribed here that means entry (1,1) is the upper-left one.

enum class Subsystem : int {
    System = 0,
    AncillaA = 1,
    AncillaX = 2,
};

struct QubitLabel {
    Subsystem kind = Subsystem::System;
    int index = 0;

    friend auto operator<=>(const QubitLabel&, const QubitLabel&) = default;

    std::string str() const;
};

inline QubitLabel sys_qubit(int i) { return {Subsystem::System, i}; }
inline QubitLabel a_qubit(int i) { return {Subsystem::AncillaA, i}; }
inline QubitLabel x_qubit(int i) { return {Subsystem::AncillaX, i}; }

/// Dense-simulation size cap (qubits per register). Default 16.
int max_register_qubits();
void set_max_register_qubits(int n);

/// Scoped raise of the register cap, for oracles that need wide pure-state
/// registers. Restores the previous cap on destruction.
class RegisterCapGuard {
public:
    explicit RegisterCapGuard(int at_least);
    ~RegisterCapGuard();
    RegisterCapGuard(const RegisterCapGuard&) = delete;
    RegisterCapGuard& operator=(const RegisterCapGuard&) = delete;

private:
    int saved_;
};

class Register {
public:
    Register() = default;

    /// Sorts into canonical order; throws ValidationError on duplicate
    /// labels or when the cap is exceeded.
    explicit Register(std::vector<QubitLabel> labels);

    /// S0..S(d-1).
    static Register system(int d);

    int size() const { return static_cast<int>(labels_.size()); }
    std::uint64_t dim() const { return std::uint64_t{1} << labels_.size(); }

    bool contains(QubitLabel q) const;
    /// Canonical position of a label; throws ValidationError if absent.
    int position(QubitLabel q) const;
    /// Bit shift of a label inside a basis index (position 0 = MSB).
    int shift(QubitLabel q) const { return size() - 1 - position(q); }

    const std::vector<QubitLabel>& labels() const { return labels_; }

    bool disjoint(const Register& other) const;
    /// Union register; throws ValidationError on label collision.
    Register merged(const Register& other) const;
    /// Register with the given labels removed; throws if any is absent.
    Register without(const std::vector<QubitLabel>& drop) const;

    friend bool operator==(const Register&, const Register&) = default;

    std::string str() const;

private:
    std::vector<QubitLabel> labels_;
};

}  // namespace qhist
