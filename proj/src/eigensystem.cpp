#include "endo/eigensystem.hpp"

#include <algorithm>

namespace endo {

FiniteModule FiniteModule::make(CtxPtr ctx, int dim, std::map<std::string, Matrix> ops,
                                std::set<std::string> sub_labels) {
    if (!ctx) throw std::invalid_argument("FiniteModule: null context");
    if (dim < 0) throw std::invalid_argument("FiniteModule: negative dimension");
    for (const auto& [label, a] : ops)
        if (a.rows() != dim || a.cols() != dim)
            throw std::invalid_argument("FiniteModule: operator '" + label + "' has wrong shape");
    for (const auto& label : sub_labels)
        if (!ops.count(label))
            throw std::invalid_argument("FiniteModule: unknown sub label '" + label + "'");

    for (auto i = ops.begin(); i != ops.end(); ++i)
        for (auto j = std::next(i); j != ops.end(); ++j)
            if (!is_zero_at_precision(i->second * j->second - j->second * i->second))
                throw module_error("operators '" + i->first + "' and '" + j->first +
                                   "' do not commute at precision");

    FiniteModule m;
    m.ctx_ = std::move(ctx);
    m.dim_ = dim;
    m.ops_ = std::move(ops);
    m.sub_labels_ = std::move(sub_labels);
    return m;
}

const Matrix& FiniteModule::op(const std::string& label) const {
    auto it = ops_.find(label);
    if (it == ops_.end()) throw std::invalid_argument("FiniteModule: no operator '" + label + "'");
    return it->second;
}

std::set<std::string> FiniteModule::all_labels() const {
    std::set<std::string> s;
    for (const auto& [label, a] : ops_) s.insert(label);
    return s;
}

bool same_values(const Eigensystem& a, const Eigensystem& b) {
    if (a.values.size() != b.values.size()) return false;
    for (const auto& [label, v] : a.values) {
        auto it = b.values.find(label);
        if (it == b.values.end() || !equal_at_precision(v, it->second)) return false;
    }
    return true;
}

int LocalPiece::total_multiplicity() const {
    int t = 0;
    for (const auto& s : systems) t += s.multiplicity;
    return t;
}

namespace {

// Coordinates of A restricted to the invariant subspace spanned by basis.
Matrix restrict_to_span(const Matrix& a, const Matrix& basis) {
    return solve_in_span(basis, a * basis);
}

struct Space {
    Matrix basis;
    std::map<std::string, Scalar> values;
};

// Sequential joint-eigenspace refinement.  require_semisimple demands that
// eigenspace dimensions for each operator exhaust each refined space.
std::vector<Space> refine_spaces(const FiniteModule& m, const std::set<std::string>& labels,
                                 std::vector<Space> spaces, bool require_semisimple) {
    const CtxPtr& ctx = m.ctx();
    for (const auto& label : labels) {
        const Matrix& a = m.op(label);
        std::vector<Space> next;
        for (const auto& space : spaces) {
            Matrix rest = restrict_to_span(a, space.basis);
            std::vector<RootMult> roots;
            try {
                roots = roots_in_field(char_poly(rest));
            } catch (const outside_scalar_field&) {
                throw outside_scalar_field("eigenvalue outside scalar field");
            }
            int covered = 0;
            for (const auto& rm : roots) {
                Matrix shifted = rest - rm.root * Matrix::identity(ctx, rest.rows());
                Matrix ker = kernel_basis(shifted);
                if (ker.cols() == 0) continue;
                if (require_semisimple && ker.cols() != rm.multiplicity)
                    throw module_error("operator '" + label +
                                       "' is not semisimple over the scalar field");
                covered += ker.cols();
                Space s;
                s.basis = space.basis * ker;
                s.values = space.values;
                s.values.emplace(label, rm.root);
                next.push_back(std::move(s));
            }
            if (require_semisimple && covered != rest.rows())
                throw module_error("operator '" + label +
                                   "' is not semisimple over the scalar field");
        }
        spaces = std::move(next);
    }
    return spaces;
}

std::vector<Eigensystem> to_eigensystems(const std::vector<Space>& spaces) {
    std::vector<Eigensystem> out;
    out.reserve(spaces.size());
    for (const auto& s : spaces) out.push_back(Eigensystem{s.values, s.basis.cols()});
    return out;
}

}  // namespace

std::vector<Eigensystem> common_eigensystems(const FiniteModule& m,
                                             const std::set<std::string>& labels) {
    for (const auto& label : labels) m.op(label);  // validate labels
    std::vector<Space> start{Space{Matrix::identity(m.ctx(), m.dim()), {}}};
    if (m.dim() == 0) return {};
    return to_eigensystems(refine_spaces(m, labels, std::move(start), true));
}

std::vector<Eigensystem> lift_eigensystem(const FiniteModule& m,
                                          const std::map<std::string, Scalar>& chi) {
    std::set<std::string> sub = m.sub_labels();
    for (const auto& [label, v] : chi)
        if (!sub.count(label))
            throw std::invalid_argument("lift_eigensystem: '" + label + "' is not a sub label");
    if (chi.size() != sub.size())
        throw std::invalid_argument("lift_eigensystem: eigensystem must cover all sub labels");

    // Joint chi-eigenspace of the sub-labeled operators.
    Matrix basis = Matrix::identity(m.ctx(), m.dim());
    for (const auto& [label, v] : chi) {
        Matrix rest = restrict_to_span(m.op(label), basis);
        Matrix ker = kernel_basis(rest - v * Matrix::identity(m.ctx(), rest.rows()));
        if (ker.cols() == 0)
            throw module_error("lift_eigensystem: not an eigensystem of the sub operators");
        basis = basis * ker;
    }

    // The chi-eigenspace is stable under the remaining (commuting) operators;
    // enumerate joint eigensystems inside it.
    std::set<std::string> remaining;
    for (const auto& label : m.all_labels())
        if (!sub.count(label)) remaining.insert(label);
    std::vector<Space> start{Space{std::move(basis), chi}};
    auto spaces = refine_spaces(m, remaining, std::move(start), false);
    if (spaces.empty())
        throw module_error("lift_eigensystem: no extension with eigenvalues in the scalar field");
    return to_eigensystems(spaces);
}

FiniteModule tensor_module(const FiniteModule& m1, const FiniteModule& m2) {
    const CtxPtr& ctx = m1.ctx();
    std::map<std::string, Matrix> ops;
    Matrix i1 = Matrix::identity(ctx, m1.dim());
    Matrix i2 = Matrix::identity(ctx, m2.dim());
    for (const auto& [label, a] : m1.ops()) ops.emplace(label, kronecker(a, i2));
    for (const auto& [label, b] : m2.ops()) {
        if (ops.count(label))
            throw std::invalid_argument("tensor: label '" + label + "' appears in both factors");
        ops.emplace(label, kronecker(i1, b));
    }
    std::set<std::string> subs = m1.sub_labels();
    subs.insert(m2.sub_labels().begin(), m2.sub_labels().end());
    return FiniteModule::make(ctx, m1.dim() * m2.dim(), std::move(ops), std::move(subs));
}

std::vector<Eigensystem> tensor_eigensystems(const FiniteModule& m1, const FiniteModule& m2) {
    for (const auto& [label, b] : m2.ops())
        if (m1.ops().count(label))
            throw std::invalid_argument("tensor: label '" + label + "' appears in both factors");

    auto check_semisimple = [](const FiniteModule& m, std::vector<Eigensystem> systems) {
        int total = 0;
        for (const auto& s : systems) total += s.multiplicity;
        if (total != m.dim())
            throw module_error("tensor_eigensystems: factor module is not semisimple");
        return systems;
    };
    auto s1 = check_semisimple(m1, common_eigensystems(m1, m1.all_labels()));
    auto s2 = check_semisimple(m2, common_eigensystems(m2, m2.all_labels()));

    std::vector<Eigensystem> out;
    out.reserve(s1.size() * s2.size());
    for (const auto& x : s1)
        for (const auto& y : s2) {
            Eigensystem e;
            e.values = x.values;
            e.values.insert(y.values.begin(), y.values.end());
            e.multiplicity = x.multiplicity * y.multiplicity;
            out.push_back(std::move(e));
        }
    return out;
}

FiniteModule slope_submodule(const FiniteModule& m, const std::string& u0_label, HalfInt nu) {
    const CtxPtr& ctx = m.ctx();
    const Matrix& u0 = m.op(u0_label);
    SlopePoly cp = char_poly(u0);
    if (!cp.coeff(0).is_value()) throw module_error("slope_submodule: u0 is not invertible");

    // Fredholm normalization: reciprocal of the (monic) char poly has
    // constant term 1, and its Newton slopes are the u0 eigenvalue
    // valuations.
    SlopePoly fredholm = reciprocal(cp);
    SlopeSplit split = slope_factor(fredholm, nu);
    const int d = split.q.degree();

    Matrix qrec_at_u0 = eval(reciprocal(split.q), u0);
    Matrix basis = kernel_basis(qrec_at_u0);
    if (basis.cols() != d)
        throw precision_error("slope_submodule: kernel dimension does not match the cut");

    std::map<std::string, Matrix> restricted;
    for (const auto& [label, a] : m.ops()) restricted.emplace(label, restrict_to_span(a, basis));
    return FiniteModule::make(ctx, d, std::move(restricted), m.sub_labels());
}

LocalPiece local_piece(const FiniteModule& m, const std::string& u0_label, HalfInt nu) {
    FiniteModule sub = slope_submodule(m, u0_label, nu);
    LocalPiece piece{common_eigensystems(sub, sub.all_labels())};
    for (const auto& s : piece.systems) {
        const Scalar& v = s.values.at(u0_label);
        if (!(valuation(v) <= nu))
            throw module_error("local_piece: eigenvalue above the slope bound");
    }
    return piece;
}

}  // namespace endo
