#pragma once
#include "tcert/coeff.hpp"
#include "tcert/context.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcert {

// Sparse multivariate polynomial over the coefficient field of a context.
// Terms are keyed by exponent vectors of length ctx->nvars(); zero
// coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Exp, Coefficient>;

    Polynomial() = default;
    explicit Polynomial(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(CtxPtr ctx) { return Polynomial(std::move(ctx)); }
    static Polynomial constant(CtxPtr ctx, const BigRat& v);
    static Polynomial from_coeff(CtxPtr ctx, Coefficient c);
    static Polynomial variable(CtxPtr ctx, std::size_t idx, std::int64_t power = 1);
    static Polynomial variable(CtxPtr ctx, const std::string& name, std::int64_t power = 1);
    static Polynomial parameter(CtxPtr ctx, const std::string& name);
    static Polynomial term(CtxPtr ctx, Exp e, Coefficient c);

    const CtxPtr& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Exp e, const Coefficient& c); // merges, drops zero

    bool operator==(const Polynomial& o) const;

private:
    CtxPtr ctx_;
    TermMap terms_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial poly_pow(const Polynomial& a, std::int64_t e);
Polynomial scale(const Polynomial& a, const Coefficient& c);
Polynomial scale(const Polynomial& a, const BigRat& c);

struct Degrees {
    std::optional<std::int64_t> total;                 // nullopt for the zero poly
    std::vector<std::optional<std::int64_t>> by_block; // one entry per block
};
Degrees degrees(const Polynomial& f);
std::int64_t term_total_degree(const Exp& e);
std::optional<std::int64_t> degree_in_var(const Polynomial& f, std::size_t idx);

// Substitute polynomials for variables by name. Every binding value must
// live in one shared target context; unbound variables and all parameters
// of f must exist there by name (parameters with identical rewrites).
Polynomial substitute(const Polynomial& f,
                      const std::map<std::string, Polynomial>& bindings,
                      CtxPtr target = nullptr);

// Reinterpret f in a context that contains all of f's variables and
// parameters by name (parameters with identical rewrites).
Polynomial embed(const Polynomial& f, const CtxPtr& target);

// Same exponents and coefficients over a renamed context (by position).
Polynomial with_context(const Polynomial& f, const CtxPtr& renamed);

Polynomial partial_derivative(const Polynomial& f, const std::string& var);

// Append a fresh variable (block 0) and multiply each term up to the total
// degree of f. Returns the polynomial over the extended context.
Polynomial homogenize(const Polynomial& f, const std::string& fresh_name);
// One fresh variable per block, appended in block order.
Polynomial homogenize_blocks(const Polynomial& f, const std::vector<std::string>& fresh_names);
// Set `var` to 1 and remove it from the context.
Polynomial dehomogenize(const Polynomial& f, const std::string& var);

Polynomial specialize_params(const Polynomial& f, const std::map<std::string, BigRat>& values);

// f must be a single term with coefficient 1; true when its monomial divides
// every term of g.
bool monomial_divides_all_terms(const Polynomial& g, const Polynomial& mono);
// Divide g exactly by the monomial `mono` (single term, coefficient 1).
Polynomial divide_by_monomial(const Polynomial& g, const Polynomial& mono);

void check_same_context(const Polynomial& a, const Polynomial& b, const char* where);

} // namespace tcert
