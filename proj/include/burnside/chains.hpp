#pragma once

#include <cstdint>
#include <vector>

#include "burnside/rational.hpp"
#include "burnside/rng.hpp"

namespace burnside {

/// Lumped chain on {0..n}: coordinate blocks are resampled through
/// Ewens(theta) cycles and fair coin labels. theta = 1 is the plain
/// orbit chain with uniform stationary law.
struct ChainSpec {
    int n = 1;
    Rat theta{1};

    void validate() const;
};

/// Dense exact transition kernel. Rows sum to exactly 1.
class RowStochasticMatrix {
  public:
    explicit RowStochasticMatrix(int order);

    int order() const { return order_; }
    Rat& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * order_ + col]; }
    const Rat& at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * order_ + col];
    }
    std::vector<Rat> row(int i) const;

    /// Throws if some row does not sum to exactly 1.
    void validate() const;

  private:
    int order_;
    std::vector<Rat> entries_;
};

/// Row 0 of the untwisted kernel: alpha_j = C(2j,j) C(2(n-j),n-j) / 2^{2n}.
std::vector<Rat> alpha_row(int n);

/// Row 0 of the twisted kernel: the beta-binomial(n, theta/2, theta/2) mass.
/// Convention: a size-0 block contributes the point mass at 0.
std::vector<Rat> twisted_zero_row(const ChainSpec& spec);

/// Full kernel by convolving the two block rows: row j is the law of
/// (ones resampled from the j-block) + (ones resampled from the (n-j)-block).
RowStochasticMatrix build_matrix(const ChainSpec& spec);

/// One lumped step from `state`: Ewens cycle types for both blocks, fair
/// coin per cycle, returns the total length of cycles labeled one.
int lumped_step(int state, const ChainSpec& spec, Rng& rng);

/// A realized lumped trajectory together with what produced it.
/// states[0] is the start; consecutive entries are one chain step apart.
struct TrajectorySample {
    ChainSpec spec;
    std::uint64_t seed = 0;
    std::vector<int> states;
};

/// Run `steps` lumped transitions from `start` (default: state n, the
/// all-ones configuration).
TrajectorySample sample_trajectory(const ChainSpec& spec, int start, int steps,
                                   std::uint64_t seed);

/// One full-state step at theta = 1: uniform permutation of each block,
/// coin per cycle, labels written back in place. bits.size() <= 1e6.
void full_burnside_step(std::vector<std::uint8_t>& bits, Rng& rng);

/// One step of the k-color twisted chain on strings over {0..k-1}:
/// per color class sample an Ewens(theta) cycle partition; a cycle of
/// length c is recolored r with probability gamma_r^c / sum_l gamma_l^c.
/// gammas has size k with gammas[0] == 1 by convention.
std::vector<int> kcolors_twisted_step(const std::vector<int>& colors, int k,
                                      double theta, const std::vector<double>& gammas,
                                      Rng& rng);

// --- continuous limit on [0,1] ---

/// y = x Z + (1-x) Z' with Z, Z' independent Beta(theta/2, theta/2).
double continuous_step(double x, double theta, Rng& rng);

/// Same kernel via stick breaking: fragment [0,x] and [x,1] with
/// Beta(1,theta) sticks, keep each piece with a fair coin.
double continuous_step_stickbreaking(double x, double theta, Rng& rng);

/// Transition density
///   k(x,y) = x^{1-theta} (1-x)^{1-theta} / B(theta/2,theta/2)^2 *
///            int_{max(0,x+y-1)}^{min(x,y)} [z (x-z) (y-z) (1-x-y+z)]^{theta/2-1} dz
/// by double-exponential quadrature (handles the endpoint singularities
/// for theta < 2). Throws std::runtime_error if the quadrature error
/// estimate is out of tolerance.
double continuous_density(double x, double y, double theta);

// --- generic twisted engine over explicit group actions ---

/// Explicit finite action: elements[g] is the permutation of states
/// induced by group element g, weight_w is the group weight (class
/// function when lumping is claimed), weight_v the state weight (orbit
/// function when lumping is claimed).
struct GroupActionTable {
    int state_count = 0;
    std::vector<std::vector<int>> elements;
    std::vector<Rat> weight_w;
    std::vector<Rat> weight_v;

    /// Checks shapes, positivity of weights, presence of the identity and
    /// bijectivity of every element; for small tables also closure under
    /// composition.
    void validate() const;
};

/// State space {0,1}^n acted on by all n! coordinate permutations,
/// w(sigma) = theta^{#cycles}, v = 1. States are bitmask-indexed.
GroupActionTable binary_burnside_action(int n, const Rat& theta);

/// State space {0..k-1}^n, w(sigma) = theta^{#cycles},
/// v(x) = prod_{j>=1} gammas[j]^{#positions of color j} (gammas[0] = 1).
GroupActionTable kcolor_burnside_action(int n, int k, const Rat& theta,
                                        const std::vector<Rat>& gammas);

/// K(x,y) = v(y)/W(x) * sum_{g in G_x i G_y} w(g)/V(g), exact.
RowStochasticMatrix generic_twisted_matrix(const GroupActionTable& table);

/// Normalized stationary law of the generic chain: proportional to W(x)v(x).
std::vector<Rat> stationary_weights(const GroupActionTable& table);

/// state -> orbit id under the action (ids dense, by smallest member).
std::vector<int> orbits_of(const GroupActionTable& table);

/// Max over same-orbit state pairs (x,y) and orbits O of
/// | sum_{q in O} K(x,q) - sum_{q in O} K(y,q) |; exactly 0 when the
/// weights satisfy the lumping hypotheses.
Rat lumpability_check(const GroupActionTable& table);

/// The lumped kernel over orbits (rows indexed by orbit id).
RowStochasticMatrix lump_matrix(const GroupActionTable& table);

}  // namespace burnside
