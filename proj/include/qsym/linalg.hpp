#pragma once

// Incremental exact rational span maintenance: reduced echelon form with an
// expression ledger, so dependent vectors come back with their exact
// coordinates over the previously accepted elements. Plain fraction Gaussian
// elimination; the orbit spaces here have at most a few hundred columns.

#include "qsym/errors.hpp"
#include "qsym/rational.hpp"

#include <optional>
#include <vector>

namespace qsym {

struct InsertOutcome {
    bool independent = false;
    /// When dependent: v = sum coords[j] * (j-th accepted element).
    std::vector<Rational> coords;
};

class SpanBasis {
public:
    explicit SpanBasis(long dim) : dim_(dim) {}

    long dim() const { return dim_; }
    long rank() const { return long(rows_.size()); }
    long accepted() const { return accepted_; }

    InsertOutcome insert(const std::vector<Rational>& v) {
        auto [residual, expr] = reduce(v);
        long pivot = first_nonzero(residual);
        if (pivot < 0) {
            // rejected: coords are over the previously accepted elements
            InsertOutcome out;
            out.coords = std::move(expr);
            negate_into_dependency(out.coords);
            return out;
        }
        // normalize pivot to 1
        Rational lead = residual[pivot];
        for (auto& x : residual) x /= lead;
        for (auto& x : expr) x /= lead;
        // own contribution of the new element
        expr.resize(accepted_ + 1, Rational(0));
        expr[accepted_] = Rational(1) / lead;
        ++accepted_;
        // eliminate the new pivot from existing rows to keep reduced form
        for (auto& row : rows_) {
            Rational c = row.v[pivot];
            if (c == 0) continue;
            for (long j = 0; j < dim_; ++j) row.v[j] -= c * residual[j];
            row.expr.resize(accepted_, Rational(0));
            for (size_t j = 0; j < expr.size(); ++j) row.expr[j] -= c * expr[j];
        }
        Row r;
        r.v = std::move(residual);
        r.pivot = pivot;
        r.expr = std::move(expr);
        size_t at = 0;
        while (at < rows_.size() && rows_[at].pivot < pivot) ++at;
        rows_.insert(rows_.begin() + at, std::move(r));
        InsertOutcome out;
        out.independent = true;
        return out;
    }

    /// Non-mutating membership test; coords over accepted elements on success.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& v) const {
        auto [residual, expr] = reduce(v);
        if (first_nonzero(residual) >= 0) return std::nullopt;
        negate_into_dependency(expr);
        return expr;
    }

    bool contains(const std::vector<Rational>& v) const { return solve(v).has_value(); }

private:
    struct Row {
        std::vector<Rational> v;
        long pivot = -1;
        std::vector<Rational> expr; // row = sum expr[j] * (j-th accepted input)
    };

    /// residual = v - sum c_i row_i ; expr = - sum c_i row_i.expr (so that
    /// v = residual - expr-combination of original inputs).
    std::pair<std::vector<Rational>, std::vector<Rational>> reduce(const std::vector<Rational>& v) const {
        if (long(v.size()) != dim_) throw DimensionMismatch("SpanBasis: vector dimension mismatch");
        std::vector<Rational> residual = v;
        std::vector<Rational> expr(accepted_, Rational(0));
        for (const Row& row : rows_) {
            Rational c = residual[row.pivot];
            if (c == 0) continue;
            for (long j = 0; j < dim_; ++j) residual[j] -= c * row.v[j];
            for (size_t j = 0; j < row.expr.size(); ++j) expr[j] -= c * row.expr[j];
        }
        return {std::move(residual), std::move(expr)};
    }

    static void negate_into_dependency(std::vector<Rational>& expr) {
        for (auto& x : expr) x = -x;
    }

    long first_nonzero(const std::vector<Rational>& v) const {
        for (long j = 0; j < dim_; ++j)
            if (v[j] != 0) return j;
        return -1;
    }

    long dim_;
    long accepted_ = 0;
    std::vector<Row> rows_;
};

} // namespace qsym
