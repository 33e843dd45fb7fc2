#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcert {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Optional algebraic relation for a parameter: name^exp rewrites to the
// rational constant `to`. Parameters without one are transcendental.
struct ParamRewrite {
    std::int64_t exp = 0;
    BigRat to;
    bool operator==(const ParamRewrite& o) const { return exp == o.exp && to == o.to; }
};

struct VarDecl {
    std::string name;
    int block = 0;
    bool operator==(const VarDecl& o) const { return name == o.name && block == o.block; }
};

struct ParamDecl {
    std::string name;
    std::optional<ParamRewrite> rewrite;
    bool operator==(const ParamDecl& o) const { return name == o.name && rewrite == o.rewrite; }
};

// Immutable symbol table shared by all values built over it. Variables and
// parameters live in one namespace; block tags partition the variables for
// multigraded operations.
class VarContext {
public:
    static std::shared_ptr<const VarContext> make(std::vector<VarDecl> vars,
                                                  std::vector<ParamDecl> params = {});

    const std::vector<VarDecl>& vars() const { return vars_; }
    const std::vector<ParamDecl>& params() const { return params_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t nparams() const { return params_.size(); }
    int block_count() const { return block_count_; }

    std::optional<std::size_t> var_index(std::string_view name) const;
    std::optional<std::size_t> param_index(std::string_view name) const;
    bool has_name(std::string_view name) const;

    const std::string& var_name(std::size_t i) const { return vars_.at(i).name; }
    const std::string& param_name(std::size_t i) const { return params_.at(i).name; }

    bool operator==(const VarContext& o) const {
        return vars_ == o.vars_ && params_ == o.params_;
    }

private:
    VarContext() = default;
    std::vector<VarDecl> vars_;
    std::vector<ParamDecl> params_;
    std::map<std::string, std::size_t, std::less<>> var_idx_;
    std::map<std::string, std::size_t, std::less<>> param_idx_;
    int block_count_ = 0;
};

using CtxPtr = std::shared_ptr<const VarContext>;

inline bool same_context(const CtxPtr& a, const CtxPtr& b) {
    return a == b || (a && b && *a == *b);
}

// True for [A-Za-z_][A-Za-z0-9_]*.
bool valid_identifier(std::string_view s);

} // namespace tcert
