#include "qhist/register.hpp"

#include <algorithm>
#include <atomic>

#include "qhist/errors.hpp"

namespace qhist {

namespace {
std::atomic<int> g_max_qubits{16};
}

int max_register_qubits() { return g_max_qubits.load(); }

void set_max_register_qubits(int n) {
    if (n < 1 || n > 28) {
        throw ValidationError("register cap must be in [1, 28], got " +
                              std::to_string(n));
    }
    g_max_qubits.store(n);
}

RegisterCapGuard::RegisterCapGuard(int at_least) : saved_(max_register_qubits()) {
    if (at_least > saved_) set_max_register_qubits(at_least);
}

RegisterCapGuard::~RegisterCapGuard() { g_max_qubits.store(saved_); }

std::string QubitLabel::str() const {
    const char* prefix = kind == Subsystem::System     ? "S"
                         : kind == Subsystem::AncillaA ? "A"
                                                       : "X";
    return prefix + std::to_string(index);
}

Register::Register(std::vector<QubitLabel> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) {
        throw ValidationError("label collision: " + dup->str());
    }
    if (static_cast<int>(labels_.size()) > max_register_qubits()) {
        throw ValidationError("register of " + std::to_string(labels_.size()) +
                              " qubits exceeds the cap of " +
                              std::to_string(max_register_qubits()));
    }
}

Register Register::system(int d) {
    if (d < 1) throw ValidationError("system size must be positive");
    std::vector<QubitLabel> labels;
    labels.reserve(d);
    for (int i = 0; i < d; ++i) labels.push_back(sys_qubit(i));
    return Register(std::move(labels));
}

bool Register::contains(QubitLabel q) const {
    return std::binary_search(labels_.begin(), labels_.end(), q);
}

int Register::position(QubitLabel q) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), q);
    if (it == labels_.end() || *it != q) {
        throw ValidationError("qubit " + q.str() + " not in register " + str());
    }
    return static_cast<int>(it - labels_.begin());
}

bool Register::disjoint(const Register& other) const {
    for (const auto& q : other.labels_) {
        if (contains(q)) return false;
    }
    return true;
}

Register Register::merged(const Register& other) const {
    std::vector<QubitLabel> all = labels_;
    all.insert(all.end(), other.labels_.begin(), other.labels_.end());
    return Register(std::move(all));  // constructor reports collisions
}

Register Register::without(const std::vector<QubitLabel>& drop) const {
    std::vector<QubitLabel> kept;
    kept.reserve(labels_.size());
    for (const auto& q : drop) position(q);  // validate membership
    for (const auto& q : labels_) {
        if (std::find(drop.begin(), drop.end(), q) == drop.end()) kept.push_back(q);
    }
    return Register(std::move(kept));
}

std::string Register::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i) out += ",";
        out += labels_[i].str();
    }
    return out + ")";
}

}  // namespace qhist
