#pragma once
/**
 * @file correlate.hpp
 * @brief Correlation auditing on fibered point data: assemble the ordered
 *        n-tuples living over each parameter value, fit the exact vector
 *        space of bounded-degree polynomials vanishing on all of them, and
 *        extract a per-fiber count bound with an explicit excluded-fiber
 *        certificate.
 *
 * All linear algebra is exact. Variables are always ordered as the tuple
 * coordinates (slot by slot) followed by the fiber parameter.
 */
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/multipoly.hpp"

namespace ecs {

// Finite point data over a rational parameter line. Every point vector in
// one dataset must have the same dimension; listed fibers must be nonempty.
struct FiberedPointSet {
    std::map<BigRational, std::vector<std::vector<BigRational>>> fibers;
};

// Uniform coordinate dimension, zero for an empty dataset.
// Throws std::invalid_argument on ragged dimensions or an empty fiber.
std::size_t point_dimension(const FiberedPointSet& ps);

struct FiberTuples {
    BigRational parameter;
    // Each entry is n point vectors concatenated.
    std::vector<std::vector<BigRational>> tuples;
};

// All ordered n-tuples within each fiber, fibers in ascending parameter
// order, first slot varying slowest. Throws std::domain_error when n = 0.
std::vector<FiberTuples> assemble_tuples(const FiberedPointSet& ps, unsigned n);

// Exact evaluation matrix: one row per tuple, one column per monomial of
// total degree <= degree in the tuple coordinates plus the parameter.
struct TupleMatrix {
    unsigned degree = 1;
    std::size_t nvars = 0;
    std::vector<Exponents> monomials;  // ascending graded-lex
    std::vector<std::vector<BigRational>> rows;
};

TupleMatrix build_tuple_matrix(const std::vector<FiberTuples>& tuples,
                               std::size_t tuple_len, unsigned degree,
                               unsigned jobs = 1);

struct HypersurfaceFit {
    std::size_t rank = 0;
    std::size_t monomial_count = 0;
    // Basis of the nullspace: integer-primitive polynomials, each verified
    // to evaluate to exactly zero on every tuple.
    std::vector<MultiPoly<BigRational>> basis;
};

// Fraction-free elimination over the integerized rows; rank plus the number
// of basis members always equals monomial_count.
HypersurfaceFit fit_hypersurfaces(const std::vector<FiberTuples>& tuples,
                                  std::size_t tuple_len, unsigned degree,
                                  unsigned jobs = 1);

// The nullspace basis alone; empty when no degree-bounded polynomial
// vanishes on all tuples.
std::vector<MultiPoly<BigRational>> find_hypersurface(
    const std::vector<FiberTuples>& tuples, std::size_t tuple_len,
    unsigned degree, unsigned jobs = 1);

struct Lemma1Result {
    // Max data fiber count among fibers not excluded; every fiber outside
    // `excluded` holds at most `bound` points.
    std::size_t bound = 0;
    // per_level[k-1] = max count among fibers first constrained at slot k.
    std::vector<std::size_t> per_level;
    std::vector<BigRational> excluded;
};

// Descends the constraint set one tuple slot at a time: a fiber is counted
// at the deepest slot where some constraint, specialized at a data prefix
// and the fiber parameter, stays a nonzero polynomial in that slot; fibers
// on which everything collapses to zero are excluded. Constraints must
// vanish on every assembled tuple (std::domain_error otherwise); their
// arity must match the data (std::invalid_argument otherwise).
Lemma1Result lemma1_bound(const FiberedPointSet& points,
                          const std::vector<MultiPoly<BigRational>>& constraints,
                          unsigned n);

struct CorrelationReport {
    unsigned n = 1;
    unsigned degree = 1;
    std::size_t tuple_count = 0;
    std::size_t monomial_count = 0;
    std::size_t rank = 0;
    bool correlated = false;
    std::vector<MultiPoly<BigRational>> witnesses;
    std::size_t bound = 0;
    std::vector<std::size_t> per_level;
    std::vector<BigRational> excluded_fibers;
    std::string statement;
};

// assemble_tuples -> fit_hypersurfaces -> (when witnesses exist)
// lemma1_bound, with a one-line human-readable verdict.
CorrelationReport correlation_report(const FiberedPointSet& ps, unsigned n,
                                     unsigned degree, unsigned jobs = 1);

}  // namespace ecs
