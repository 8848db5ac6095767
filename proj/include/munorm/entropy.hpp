#ifndef MUNORM_ENTROPY_HPP
#define MUNORM_ENTROPY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "munorm/mu.hpp"

namespace munorm {

inline constexpr std::uint64_t kDefaultTermCap = 1'000'000;

/// Digits j_0, ..., j_N, each a block index of a partition.
struct MultiIndex {
    std::vector<int> digits;

    int length() const { return static_cast<int>(digits.size()); }
    bool operator==(const MultiIndex&) const = default;
};

/// Position of a multiindex in enumeration order: sum_n j_n * base^n.
std::uint64_t encode(const MultiIndex& j, int base);
MultiIndex decode(std::uint64_t code, int base, int length);
MultiIndex reversed(const MultiIndex& j);

/// base^length; throws CapError with the required count when it exceeds cap.
std::uint64_t checked_path_count(int base, int length, std::uint64_t cap);

/// pi_{X_{j_N}} U pi_{X_{j_{N-1}}} U ... U pi_{X_{j_0}}  (N copies of U).
CMatrix path_operator(const MeasureSpace& space, const CMatrix& U, const Partition& chi, const MultiIndex& j);

/// ||path_operator(j)||_mu^2 for every multiindex of N+1 digits, indexed by encode().
std::vector<Real> quantum_path_masses(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N,
                                      std::uint64_t cap = kDefaultTermCap);

/// h_U(chi, N+1) = -sum_j m_j log m_j over the path masses m_j (nats). Nonnegative
/// for contractions; masses above 1 from other operators enter the sum as is.
Real quantum_entropy_at(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N,
                        std::uint64_t cap = kDefaultTermCap);

struct EntropyReport {
    std::vector<int> n;             // number of digits, 1 .. N_max + 1
    std::vector<Real> values;       // h_U(chi, n)
    std::vector<Real> rates;        // h_U(chi, n) / n
    std::vector<Real> differences;  // h_U(chi, n + 1) - h_U(chi, n)
    std::optional<Real> closed_form;
    bool finest_partition = false;
};

EntropyReport quantum_entropy_rate(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N_max,
                                   std::uint64_t cap = kDefaultTermCap);

/// -(1/J) sum |U_ab|^2 log |U_ab|^2 for a unitary U on a uniform space.
Real quantum_entropy_closed(const MeasureSpace& space, const CMatrix& U);

/// mu(F^{-N}(X_{j_N}) cap ... cap F^{-1}(X_{j_1}) cap X_{j_0}), by intersecting preimages.
///
/// For an automorphism F the Koopman path masses match these with the digits
/// reversed: quantum_path_masses(U_F)[encode(j)] = ks_path_measure(reversed(j)).
Real ks_path_measure(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, const MultiIndex& j);

/// ks_path_measure for every multiindex of N+1 digits, indexed by encode().
std::vector<Real> ks_path_measures(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, int N,
                                   std::uint64_t cap = kDefaultTermCap);

/// h_F(chi, N+1) (nats).
Real ks_entropy_at(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, int N,
                   std::uint64_t cap = kDefaultTermCap);

/// -sum_{j,k} nu_j P_jk log P_jk for a row-stochastic P.
Real markov_entropy_rate(const RMatrix& P, const RVector& nu);

Real entropy_of(const std::vector<Real>& masses);

}  // namespace munorm

#endif  // MUNORM_ENTROPY_HPP
