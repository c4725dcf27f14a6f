#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "endo/matrix.hpp"
#include "endo/poly.hpp"

namespace endo {

/// Structural problems with a module's operator data (non-commuting pairs,
/// failed semisimplicity, singular u0, ...).
struct module_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional space with commuting labeled operators: the
/// finite-rank stand-in for the slope-bounded piece of the space of p-adic
/// automorphic forms.  Construction verifies that all operator pairs commute
/// at the working precision.
class FiniteModule {
  public:
    static FiniteModule make(CtxPtr ctx, int dim, std::map<std::string, Matrix> ops,
                             std::set<std::string> sub_labels);

    int dim() const { return dim_; }
    const CtxPtr& ctx() const { return ctx_; }
    const std::map<std::string, Matrix>& ops() const { return ops_; }
    const Matrix& op(const std::string& label) const;
    const std::set<std::string>& sub_labels() const { return sub_labels_; }
    std::set<std::string> all_labels() const;

  private:
    FiniteModule() = default;
    int dim_ = 0;
    std::map<std::string, Matrix> ops_;
    std::set<std::string> sub_labels_;
    CtxPtr ctx_;
};

/// A joint system of eigenvalues; multiplicity is the dimension of the joint
/// eigenspace realizing it.
struct Eigensystem {
    std::map<std::string, Scalar> values;
    int multiplicity = 1;
};

bool same_values(const Eigensystem& a, const Eigensystem& b);

/// Spectrum of the commutative algebra generated by the labeled operators on
/// the slope submodule.
struct LocalPiece {
    std::vector<Eigensystem> systems;
    int total_multiplicity() const;
};

/// Complete list of joint eigensystems of the given labeled operators, with
/// multiplicities.  Each operator must act diagonalizably over K on every
/// joint eigenspace reached (module_error otherwise); an eigenvalue outside
/// K raises outside_scalar_field.  An empty label set yields the single
/// vacuous system of multiplicity dim.
std::vector<Eigensystem> common_eigensystems(const FiniteModule& m,
                                             const std::set<std::string>& labels);

/// All extensions of the sub-label eigensystem chi to joint eigensystems on
/// every operator of the module (the extension need not be unique, so the
/// full list is returned).  chi must be an eigensystem of the sub-labeled
/// operators: its joint eigenspace must be nontrivial.
std::vector<Eigensystem> lift_eigensystem(const FiniteModule& m,
                                          const std::map<std::string, Scalar>& chi);

/// Eigensystems of the tensor product module as products of factor systems;
/// both factors must be semisimple over their full label sets, and the label
/// sets must be disjoint.
std::vector<Eigensystem> tensor_eigensystems(const FiniteModule& m1, const FiniteModule& m2);

/// Explicit Kronecker-product module (ops A (x) I and I (x) B), the
/// brute-force counterpart of tensor_eigensystems.
FiniteModule tensor_module(const FiniteModule& m1, const FiniteModule& m2);

/// Restriction of every operator to ker Q^rec(u0), where Q is the slope <= nu
/// factor of the Fredholm-normalized characteristic polynomial of u0.
FiniteModule slope_submodule(const FiniteModule& m, const std::string& u0_label, HalfInt nu);

/// Spectrum of all labeled operators on the slope submodule; every system has
/// val(u0 value) <= nu.
LocalPiece local_piece(const FiniteModule& m, const std::string& u0_label, HalfInt nu);

}  // namespace endo
