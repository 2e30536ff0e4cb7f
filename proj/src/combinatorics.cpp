#include "duality/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "duality/errors.hpp"

namespace duality {

namespace {

int parity_from_images(const std::vector<int>& images) {
    const int n = static_cast<int>(images.size());
    std::vector<bool> seen(images.size(), false);
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int cycle_len = 0;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            j = images[static_cast<std::size_t>(j)];
            ++cycle_len;
        }
        transpositions += cycle_len - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

} // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    if (n == 0) throw DimensionError("permutation must act on at least one slot");
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw DimensionError("permutation images are not a bijection on {0..N-1}");
        seen[static_cast<std::size_t>(v)] = true;
    }
    sign_ = parity_from_images(images_);
}

Permutation Permutation::identity(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("transposition out of range");
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
    return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(const std::string& cycles, int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[pos]))) ++pos;
    };
    skip_space();
    if (pos < cycles.size() && (cycles[pos] == 'e' || cycles[pos] == 'E')) {
        ++pos;
        skip_space();
        if (pos != cycles.size()) throw ConfigError("trailing characters after identity in '" + cycles + "'");
        return Permutation(std::move(images));
    }
    while (pos < cycles.size()) {
        if (cycles[pos] != '(') throw ConfigError("expected '(' in cycle notation '" + cycles + "'");
        ++pos;
        std::string body;
        while (true) {
            if (pos >= cycles.size()) throw ConfigError("unterminated cycle in '" + cycles + "'");
            if (cycles[pos] == ')') {
                ++pos;
                break;
            }
            body.push_back(cycles[pos++]);
        }
        // Compact digit runs like "(13)" mean (1 3); separators switch to
        // multi-digit entries, needed once N exceeds 9.
        const bool separated = body.find_first_of(", ") != std::string::npos;
        std::vector<int> cycle;
        std::size_t b = 0;
        while (b < body.size()) {
            if (body[b] == ',' || body[b] == ' ') {
                ++b;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(body[b])))
                throw ConfigError("unexpected character in cycle notation '" + cycles + "'");
            int value = 0;
            if (separated) {
                while (b < body.size() && std::isdigit(static_cast<unsigned char>(body[b])))
                    value = value * 10 + (body[b++] - '0');
            } else {
                value = body[b++] - '0';
            }
            if (value < 1 || value > n)
                throw ConfigError("cycle entry " + std::to_string(value) + " outside 1.." + std::to_string(n));
            cycle.push_back(value - 1);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k];
            int to = cycle[(k + 1) % cycle.size()];
            if (used[static_cast<std::size_t>(from)])
                throw ConfigError("slot " + std::to_string(from + 1) + " appears twice in '" + cycles + "'");
            used[static_cast<std::size_t>(from)] = true;
            images[static_cast<std::size_t>(from)] = to;
        }
        skip_space();
    }
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if ((*this)(i) != i) return false;
    return true;
}

std::string Permutation::cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(images_.size(), false);
    bool any = false;
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
        out << '(';
        int j = i;
        bool first = true;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            if (!first) out << ' ';
            out << (j + 1);
            first = false;
            j = (*this)(j);
        }
        out << ')';
        any = true;
    }
    return any ? out.str() : "e";
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw DimensionError("composing permutations of different sizes");
    std::vector<int> images(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) images[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(std::move(images));
}

ModeOccupation::ModeOccupation(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw DimensionError("occupation needs at least one mode");
    for (int c : counts_) {
        if (c < 0) throw DimensionError("occupation entries must be non-negative");
        particle_count_ += c;
    }
    if (particle_count_ < 1) throw DimensionError("occupation needs at least one particle");
}

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::int64_t ModeOccupation::labeling_count() const {
    std::int64_t r = factorial(particle_count_);
    for (int c : counts_) r /= factorial(c);
    return r;
}

std::int64_t ModeOccupation::stabilizer_order() const {
    std::int64_t s = 1;
    for (int c : counts_) s *= factorial(c);
    return s;
}

std::string ModeOccupation::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) out << ',';
        out << counts_[i];
    }
    out << ')';
    return out.str();
}

ModeAssignment::ModeAssignment(std::vector<int> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw DimensionError("assignment needs at least one particle");
    for (int v : modes_)
        if (v < 0) throw DimensionError("assignment entries must be non-negative");
}

ModeOccupation ModeAssignment::occupation(int mode_count) const {
    std::vector<int> counts(static_cast<std::size_t>(mode_count), 0);
    for (int v : modes_) {
        if (v >= mode_count) throw DimensionError("assignment entry exceeds mode count");
        ++counts[static_cast<std::size_t>(v)];
    }
    return ModeOccupation(std::move(counts));
}

std::size_t ModeAssignment::basis_index(int mode_count) const {
    std::size_t index = 0;
    for (int v : modes_) {
        if (v >= mode_count) throw DimensionError("assignment entry exceeds mode count");
        index = index * static_cast<std::size_t>(mode_count) + static_cast<std::size_t>(v);
    }
    return index;
}

std::string ModeAssignment::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (i) out << ',';
        out << modes_[i] + 1;
    }
    out << ')';
    return out.str();
}

ModeAssignment canonical_assignment(const ModeOccupation& occ) {
    std::vector<int> modes;
    modes.reserve(static_cast<std::size_t>(occ.particle_count()));
    for (int mode = 0; mode < occ.mode_count(); ++mode)
        for (int k = 0; k < occ[mode]; ++k) modes.push_back(mode);
    return ModeAssignment(std::move(modes));
}

std::vector<Permutation> stabilizer(const ModeOccupation& occ, const EnumerationLimits& limits) {
    if (occ.stabilizer_order() > limits.max_group_order)
        throw CapExceededError("stabilizer order " + std::to_string(occ.stabilizer_order()) +
                               " exceeds cap " + std::to_string(limits.max_group_order));
    const int n_particles = occ.particle_count();

    // Block-wise: all permutations of the slots within each equal-mode block.
    std::vector<std::pair<int, int>> blocks; // [start, length)
    int start = 0;
    for (int mode = 0; mode < occ.mode_count(); ++mode) {
        if (occ[mode] > 0) blocks.emplace_back(start, occ[mode]);
        start += occ[mode];
    }

    std::vector<Permutation> out;
    std::vector<int> images(static_cast<std::size_t>(n_particles));
    std::iota(images.begin(), images.end(), 0);

    std::vector<std::vector<int>> block_perm(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        block_perm[b].resize(static_cast<std::size_t>(blocks[b].second));
        std::iota(block_perm[b].begin(), block_perm[b].end(), 0);
    }

    while (true) {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int k = 0; k < blocks[b].second; ++k)
                images[static_cast<std::size_t>(blocks[b].first + k)] =
                    blocks[b].first + block_perm[b][static_cast<std::size_t>(k)];
        out.emplace_back(images);

        // Odometer over the per-block permutations.
        std::size_t b = 0;
        while (b < blocks.size() && !std::next_permutation(block_perm[b].begin(), block_perm[b].end())) ++b;
        if (b == blocks.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Transversal right_transversal(const ModeOccupation& occ, const EnumerationLimits& limits) {
    const std::int64_t r_count = occ.labeling_count();
    if (r_count > limits.max_transversal)
        throw CapExceededError("transversal size " + std::to_string(r_count) + " exceeds cap " +
                               std::to_string(limits.max_transversal));

    const ModeAssignment canonical = canonical_assignment(occ);
    const int n_particles = occ.particle_count();

    // First slot index of each mode block in the canonical assignment.
    std::vector<int> block_start(static_cast<std::size_t>(occ.mode_count()), 0);
    for (int mode = 1; mode < occ.mode_count(); ++mode)
        block_start[static_cast<std::size_t>(mode)] =
            block_start[static_cast<std::size_t>(mode - 1)] + occ[mode - 1];

    std::vector<Permutation> reps;
    reps.reserve(static_cast<std::size_t>(r_count));

    // For every distinct assignment, the coset's lexicographically smallest
    // member assigns slots of each mode in canonical order.
    std::vector<int> target = canonical.modes();
    do {
        std::vector<int> used(static_cast<std::size_t>(occ.mode_count()), 0);
        std::vector<int> images(static_cast<std::size_t>(n_particles));
        for (int k = 0; k < n_particles; ++k) {
            const int mode = target[static_cast<std::size_t>(k)];
            images[static_cast<std::size_t>(k)] =
                block_start[static_cast<std::size_t>(mode)] + used[static_cast<std::size_t>(mode)]++;
        }
        reps.emplace_back(std::move(images));
    } while (std::next_permutation(target.begin(), target.end()));

    std::sort(reps.begin(), reps.end());
    return Transversal{occ, std::move(reps)};
}

namespace {

void compositions_into(std::vector<ModeOccupation>& out, std::vector<int>& prefix, int modes_left,
                       int particles_left) {
    if (modes_left == 1) {
        prefix.push_back(particles_left);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int c = particles_left; c >= 0; --c) {
        prefix.push_back(c);
        compositions_into(out, prefix, modes_left - 1, particles_left - c);
        prefix.pop_back();
    }
}

std::int64_t binomial(int n, int k) {
    std::int64_t b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

} // namespace

std::vector<ModeOccupation> enumerate_occupations(int n, int N, const EnumerationLimits& limits) {
    if (n < 1 || N < 1) throw DimensionError("enumerate_occupations needs n,N >= 1");
    if (binomial(N + n - 1, n - 1) > limits.max_group_order)
        throw CapExceededError("occupation count exceeds enumeration cap");
    std::vector<ModeOccupation> out;
    std::vector<int> prefix;
    compositions_into(out, prefix, n, N);
    return out;
}

std::vector<Permutation> all_permutations(int n, const EnumerationLimits& limits) {
    if (factorial(n) > limits.max_group_order)
        throw CapExceededError("group order " + std::to_string(factorial(n)) + " exceeds cap " +
                               std::to_string(limits.max_group_order));
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(factorial(n)));
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

} // namespace duality
