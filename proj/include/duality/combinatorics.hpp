#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace duality {

/// Caps on combinatorial enumerations. Defaults keep everything at desk scale
/// (N! <= 40320 means N <= 8).
struct EnumerationLimits {
    std::int64_t max_group_order = 40320;
    std::int64_t max_transversal = 5040;
};

inline constexpr EnumerationLimits kDefaultLimits{};

/// Element of S_N stored as its image sequence: p(i) is the image of slot i,
/// zero-based. apply(p, t)[i] == t[p(i)].
class Permutation {
  public:
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    /// Parses one-based cycle notation, e.g. "(13)" or "(12)(34)"; "e", "()"
    /// and the empty string denote the identity.
    static Permutation from_cycles(const std::string& cycles, int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    /// Parity: +1 for even, -1 for odd.
    int sign() const { return sign_; }

    Permutation inverse() const;
    bool is_identity() const;

    /// One-based cycle notation; the identity prints as "e".
    std::string cycle_string() const;

    /// Subscript action on tuples: apply(t)[i] = t[p(i)].
    template <typename T>
    std::vector<T> apply(const std::vector<T>& tuple) const {
        std::vector<T> out(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i)
            out[i] = tuple[static_cast<std::size_t>((*this)(static_cast<int>(i)))];
        return out;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) = default;
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        return a.images_ <=> b.images_;
    }

  private:
    std::vector<int> images_;
    int sign_ = 1;
};

/// compose(a, b)(i) = a(b(i)), so compose(a, b).apply(t) = b.apply(a.apply(t)).
Permutation compose(const Permutation& a, const Permutation& b);

class ModeAssignment;

/// Particle counts per external mode.
class ModeOccupation {
  public:
    explicit ModeOccupation(std::vector<int> counts);

    int mode_count() const { return static_cast<int>(counts_.size()); }
    int particle_count() const { return particle_count_; }
    const std::vector<int>& counts() const { return counts_; }
    int operator[](int mode) const { return counts_[static_cast<std::size_t>(mode)]; }

    /// Number of inequivalent particle labelings, N! / prod_j R_j!.
    std::int64_t labeling_count() const;
    /// Order of the stabilizer subgroup, prod_j R_j!.
    std::int64_t stabilizer_order() const;

    std::string to_string() const;

    friend bool operator==(const ModeOccupation& a, const ModeOccupation& b) = default;

  private:
    std::vector<int> counts_;
    int particle_count_ = 0;
};

/// Mode label per particle slot, zero-based entries in [0, n).
class ModeAssignment {
  public:
    explicit ModeAssignment(std::vector<int> modes);

    int particle_count() const { return static_cast<int>(modes_.size()); }
    const std::vector<int>& modes() const { return modes_; }
    int operator[](int slot) const { return modes_[static_cast<std::size_t>(slot)]; }

    ModeOccupation occupation(int mode_count) const;

    /// Row-major index of the product basis vector in an n^N space.
    std::size_t basis_index(int mode_count) const;

    /// One-based rendering, e.g. "(1,1,2)".
    std::string to_string() const;

    friend bool operator==(const ModeAssignment& a, const ModeAssignment& b) = default;

  private:
    std::vector<int> modes_;
};

/// The non-decreasing assignment realizing occ.
ModeAssignment canonical_assignment(const ModeOccupation& occ);

/// All prod_j R_j! permutations leaving the canonical assignment invariant,
/// sorted by image sequence.
std::vector<Permutation> stabilizer(const ModeOccupation& occ,
                                    const EnumerationLimits& limits = kDefaultLimits);

/// Right transversal of the stabilizer in S_N: one representative per coset.
struct Transversal {
    ModeOccupation occupation;
    std::vector<Permutation> reps;

    std::int64_t size() const { return static_cast<std::int64_t>(reps.size()); }
};

/// Representatives are the lexicographically smallest permutation of each
/// coset, listed in lexicographic order; applying them to the canonical
/// assignment yields every distinct assignment with occupation occ.
Transversal right_transversal(const ModeOccupation& occ,
                              const EnumerationLimits& limits = kDefaultLimits);

/// All compositions of N into n non-negative parts, first mode filled first:
/// (N,0,...,0), (N-1,1,0,...), ..., (0,...,0,N).
std::vector<ModeOccupation> enumerate_occupations(int n, int N,
                                                  const EnumerationLimits& limits = kDefaultLimits);

/// Every element of S_N in lexicographic order; guarded by the group cap.
std::vector<Permutation> all_permutations(int n,
                                          const EnumerationLimits& limits = kDefaultLimits);

std::int64_t factorial(int n);

} // namespace duality
