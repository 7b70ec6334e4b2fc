#pragma once

#include "hhcalc/complex.hpp"
#include "hhcalc/ring.hpp"

namespace hhcalc {

// Bar construction T^c(s Abar) materialized weightwise up to weight_cap.
// Weight-n words are composable sequences of Abar basis indices; differentials
// carry the displayed signs, with the Koszul rule entering only through
// koszul_sign on suspended degrees.
class BarConstruction {
public:
    DgKRing A;
    int cap = 0;
    std::vector<SpaceRef> wspace;                       // [0..cap], wspace[0] = K
    std::vector<std::vector<std::vector<int>>> words;   // words[n]: A-indices, n >= 1
    std::vector<std::map<std::vector<int>, int>> windex;
    std::vector<BlockMap> d0;  // weight n -> n
    std::vector<BlockMap> d1;  // weight n -> n-1 (valid for n >= 1)

    static BarConstruction build(const DgKRing& a, int weight_cap);

    long word_deg(const std::vector<int>& w) const;  // sum (|a_i| + 1)
    std::string word_label(const std::vector<int>& w) const;
    int index(int weight, const std::vector<int>& w) const;

    // deconcatenation coproduct of a weight-n word: list of split points
    // (prefix in weight i, suffix in weight n-i), i = 0..n; coefficient 1.

    // the bar construction as an honest finite coaugmented dg K-coring
    // (the cap-th coradical stage F_cap BA, closed under Delta and d)
    DgKCoring as_coring() const;
    // mapping between coring indices and (weight, word-index); filled by
    // as_coring with parallel ordering: K part first, then weights ascending
    std::pair<int, int> coring_layout(int coring_index) const;
    int coring_index(int weight, int widx) const;
};

// Cobar construction T(s^{-1} Cbar), weightwise up to weight_cap. d1 raises
// weight; its top component (into cap+1) is dropped and flagged.
class CobarConstruction {
public:
    DgKCoring C;
    int cap = 0;
    std::vector<SpaceRef> wspace;
    std::vector<std::vector<std::vector<int>>> words;  // C-indices in Cbar
    std::vector<std::map<std::vector<int>, int>> windex;
    std::vector<BlockMap> d0;  // weight n -> n
    std::vector<BlockMap> d1;  // weight n -> n+1 (valid for n <= cap-1)

    static CobarConstruction build(const DgKCoring& c, int weight_cap);

    long word_deg(const std::vector<int>& w) const;  // sum (|c_i| - 1)
    std::string word_label(const std::vector<int>& w) const;
    int index(int weight, const std::vector<int>& w) const;
};

// Coderivation extension (Proposition "Coder" shape): given a family
// f[k]: weight k -> weight 1 (k >= 1) of a fixed degree, the induced
// coderivation component weight n -> weight n-k+1 summing insertions of f
// over all positions with suspended-prefix Koszul signs.
BlockMap extend_coderivation(const BarConstruction& b,
                             const std::vector<BlockMap>& f, long fdeg, int n, int k);

// Derivation extension (Proposition "Der" shape): g: weight 1 -> weight k,
// induced component weight n -> weight n+k-1.
BlockMap extend_derivation(const CobarConstruction& o, const BlockMap& g, long gdeg,
                           int n);

// Twisting morphism alpha: C -> A between honest finite objects, with its
// validated Maurer-Cartan report.
struct TwistingMorphism {
    BlockMap map;  // C.space -> A.space, degree -1
    Report report;
};

TwistingMorphism make_twisting(const DgKCoring& c, const DgKRing& a, const BlockMap& m);

// convolution f * g = mu o (f (x) g) o Delta for f, g : C -> A
BlockMap convolution(const DgKCoring& c, const DgKRing& a, const BlockMap& f,
                     const BlockMap& g);
// the *-unit eta_A o eps_C
BlockMap convolution_unit(const DgKCoring& c, const DgKRing& a);
// d(f) = d_A f - (-1)^{|f|} f d_C
BlockMap hom_diff(const DgKCoring& c, const DgKRing& a, const BlockMap& f);

// universal twisting morphisms
// pi: BA -> A (weight-1 desuspension), returned against the bar-as-coring
TwistingMorphism universal_pi(const BarConstruction& b);
// iota: C -> Omega C (weight-1 embedding), as a map C.space -> total space
// of the cobar window; Maurer-Cartan checked against the concatenation ring
TwistingMorphism universal_iota(const CobarConstruction& o);

// ----- one-sided and two-sided twisted products with explicit homotopies ---

// BA (x)_pi A with p, i, s; identities checked on the cap-interior.
struct OneSidedBar {
    BarConstruction bar;
    SpaceRef total;  // tuples ([w], a)
    std::vector<std::tuple<int, int, int>> tuples;  // (weight, word-idx, a-idx)
    std::map<std::tuple<int, int, int>, int> tindex;
    BlockMap d;
    BlockMap proj;  // p: total -> K
    BlockMap incl;  // i: K -> total
    BlockMap s;     // degree +1, exact on weight <= cap-1
    Report verify() const;  // p i = id; id - i p = ds + sd on interior
    ComplexWindow window() const;
};
OneSidedBar one_sided_bar_right(const DgKRing& a, int weight_cap);  // BA (x)_pi A

// A (x)_pi BA (left module version, used by Hochschild chains downstream)
struct OneSidedBarLeft {
    BarConstruction bar;
    SpaceRef total;  // tuples (a, [w])
    std::vector<std::tuple<int, int, int>> tuples;  // (a-idx, weight, word-idx)
    std::map<std::tuple<int, int, int>, int> tindex;
    BlockMap d;
    ComplexWindow window() const;
};
OneSidedBarLeft one_sided_bar_left(const DgKRing& a, int weight_cap);

// Omega C (x)_iota C and C (x)_iota Omega C
struct OneSidedCobar {
    CobarConstruction omega;
    bool omega_on_left = true;
    SpaceRef total;
    std::vector<std::tuple<int, int, int>> tuples;  // (weight, word, c) or (c, weight, word)
    std::map<std::tuple<int, int, int>, int> tindex;
    BlockMap d;
    BlockMap proj;
    BlockMap incl;
    BlockMap s;
    Report verify() const;
    ComplexWindow window() const;
};
OneSidedCobar one_sided_cobar(const DgKCoring& c, int weight_cap, bool omega_on_left);

// A (x)_pi BA (x)_pi A with mu~, i, s (Theorem "Two-sidedBarRes")
struct TwoSidedBar {
    BarConstruction bar;
    SpaceRef total;
    std::vector<std::tuple<int, int, int, int>> tuples;  // (a0, weight, word, a1)
    std::map<std::tuple<int, int, int, int>, int> tindex;
    BlockMap d;
    BlockMap mu_tilde;  // total -> A
    BlockMap incl;      // A -> total, a -> 1 (x) 1 (x) a
    BlockMap s;         // degree +1, exact on weight <= cap-1
    int weight_of(int tuple_index) const;
    Report verify() const;
    ComplexWindow window() const;
};
TwoSidedBar two_sided_bar(const DgKRing& a, int weight_cap);

// ----- Omega B A counit and B Omega C unit, on capped windows -------------

// Omega(BA): cobar over the bar-as-coring; epsilon, lambda, s.
struct CobarBarCounit {
    BarConstruction barA;      // inner bar, letter cap
    CobarConstruction omega;   // outer cobar over barA.as_coring()
    DgKCoring bar_coring;
    BlockMap eps;     // omega total -> A
    BlockMap lambda;  // A -> omega total
    BlockMap s;       // degree +1
    SpaceRef total;   // omega total space (all weights)
    Report verify() const;  // eps lambda = id; lambda eps - id = ds + sd interior
};
CobarBarCounit cobar_bar_counit(const DgKRing& a, int bar_cap, int cobar_cap);

// B(Omega C): bar words over cobar letters with bar-weight and total-letter
// caps; nu, rho, h.
struct BarOmegaUnit {
    DgKCoring C;
    CobarConstruction omega;  // letters
    int bar_cap = 0;
    int letter_cap = 0;
    int coradical_length = 0;
    SpaceRef total;  // bar words [u_1|...|u_m]
    std::vector<std::vector<std::pair<int, int>>> tuples;  // letters as (weight, widx)
    std::map<std::vector<std::pair<int, int>>, int> tindex;
    BlockMap d;
    BlockMap nu;   // C -> total
    BlockMap rho;  // total -> C
    BlockMap h;    // degree +1
    Report verify() const;
};
BarOmegaUnit bar_omega_unit(const DgKCoring& c, int bar_cap, int letter_cap);

}  // namespace hhcalc
