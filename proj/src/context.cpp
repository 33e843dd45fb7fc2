#include "tcert/context.hpp"
#include "tcert/errors.hpp"

#include <cctype>
#include <set>

namespace tcert {

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::shared_ptr<const VarContext> VarContext::make(std::vector<VarDecl> vars,
                                                   std::vector<ParamDecl> params) {
    auto ctx = std::shared_ptr<VarContext>(new VarContext());
    std::set<std::string, std::less<>> seen;
    std::set<int> blocks;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        if (!valid_identifier(v.name)) throw input_error("invalid variable name: '" + v.name + "'");
        if (!seen.insert(v.name).second) throw input_error("duplicate name: '" + v.name + "'");
        if (v.block < 0) throw input_error("negative block tag on variable '" + v.name + "'");
        blocks.insert(v.block);
        ctx->var_idx_[v.name] = i;
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto& p = params[i];
        if (!valid_identifier(p.name)) throw input_error("invalid parameter name: '" + p.name + "'");
        if (!seen.insert(p.name).second) throw input_error("duplicate name: '" + p.name + "'");
        if (p.rewrite && p.rewrite->exp < 1)
            throw input_error("parameter rewrite exponent must be positive for '" + p.name + "'");
        ctx->param_idx_[p.name] = i;
    }
    if (!blocks.empty()) {
        int expect = 0;
        for (int b : blocks)
            if (b != expect++)
                throw input_error("variable block tags must cover 0..B-1 without gaps");
        ctx->block_count_ = expect;
    }
    ctx->vars_ = std::move(vars);
    ctx->params_ = std::move(params);
    return ctx;
}

std::optional<std::size_t> VarContext::var_index(std::string_view name) const {
    auto it = var_idx_.find(name);
    if (it == var_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> VarContext::param_index(std::string_view name) const {
    auto it = param_idx_.find(name);
    if (it == param_idx_.end()) return std::nullopt;
    return it->second;
}

bool VarContext::has_name(std::string_view name) const {
    return var_idx_.count(name) > 0 || param_idx_.count(name) > 0;
}

} // namespace tcert
