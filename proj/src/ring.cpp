#include "qk/ring.hpp"

namespace qk {

RingConfig::RingConfig(int novikov_count, int sym_cutoff, int truncation_degree)
    : novikov(novikov_count), sym(sym_cutoff), truncation(truncation_degree) {
    weights.reserve(generator_count());
    for (int i = 0; i < novikov; ++i) weights.push_back(1);
    for (int r = 1; r <= sym; ++r) weights.push_back(r);
    validate();
}

std::string RingConfig::generator_name(int g) const {
    if (is_novikov(g)) {
        if (novikov == 1) return "Q";
        return "Q" + std::to_string(g + 1);
    }
    return "N" + std::to_string(sym_index(g));
}

int RingConfig::generator_index(const std::string& name) const {
    if (name.empty()) return -1;
    if (name == "Q") return novikov == 1 ? 0 : -1;  // bare Q is ambiguous otherwise
    char head = name[0];
    if (head != 'Q' && head != 'N') return -1;
    for (size_t i = 1; i < name.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(name[i]))) return -1;
    if (name.size() == 1) return -1;
    int idx = std::stoi(name.substr(1));
    if (idx < 1) return -1;
    if (head == 'Q') return idx <= novikov ? idx - 1 : -1;
    return idx <= sym ? novikov + idx - 1 : -1;
}

void RingConfig::validate() const {
    if (novikov < 0 || sym < 0 || generator_count() == 0)
        throw error("ring config: need at least one generator");
    if (truncation < 1) throw error("ring config: truncation degree must be >= 1");
    if (static_cast<int>(weights.size()) != generator_count())
        throw error("ring config: one weight per generator required");
    for (int w : weights)
        if (w < 1) throw error("ring config: weights must be >= 1");
    // Adams compatibility on the symmetric generators.
    for (int r = 1; r <= sym; ++r)
        for (int k = 2; static_cast<long>(k) * r <= sym; ++k)
            if (weights[novikov + k * r - 1] != k * weights[novikov + r - 1])
                throw error("ring config: weight(N_" + std::to_string(k * r) +
                            ") must equal " + std::to_string(k) + "*weight(N_" + std::to_string(r) + ")");
}

ConfigPtr make_config(int novikov_count, int sym_cutoff, int truncation_degree) {
    return std::make_shared<const RingConfig>(novikov_count, sym_cutoff, truncation_degree);
}

}  // namespace qk
