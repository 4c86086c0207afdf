#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crystal/errors.hpp"
#include "crystal/partition.hpp"

namespace crystal {

// Plane partition: 2D array of non-negative integers weakly decreasing along
// rows and down columns, trailing zeros trimmed.
class PlanePartition {
  public:
    PlanePartition() = default;
    explicit PlanePartition(std::vector<std::vector<long>> rows) : rows_(std::move(rows)) {
        for (auto& r : rows_)
            while (!r.empty() && r.back() == 0) r.pop_back();
        while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
        validate();
    }

    const std::vector<std::vector<long>>& rows() const { return rows_; }
    long entry(size_t i, size_t j) const {
        if (i >= rows_.size() || j >= rows_[i].size()) return 0;
        return rows_[i][j];
    }

    long size() const {
        long s = 0;
        for (const auto& r : rows_)
            for (long x : r) s += x;
        return s;
    }

    bool empty() const { return rows_.empty(); }

    // m-th diagonal slice: entries pi(i, i+m) for m >= 0, pi(j-m, j) for m < 0.
    Partition slice_at(long m) const {
        std::vector<long> parts;
        if (m >= 0) {
            for (size_t i = 0;; ++i) {
                long v = entry(i, i + static_cast<size_t>(m));
                if (v == 0) break;
                parts.push_back(v);
            }
        } else {
            for (size_t j = 0;; ++j) {
                long v = entry(j + static_cast<size_t>(-m), j);
                if (v == 0) break;
                parts.push_back(v);
            }
        }
        return Partition(std::move(parts));
    }

    friend bool operator==(const PlanePartition& a, const PlanePartition& b) {
        return a.rows_ == b.rows_;
    }
    friend bool operator<(const PlanePartition& a, const PlanePartition& b) {
        return a.rows_ < b.rows_;
    }

  private:
    void validate() const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            for (size_t j = 0; j < rows_[i].size(); ++j) {
                if (rows_[i][j] < 0) throw domain_error("negative entry");
                if (j + 1 < rows_[i].size() && rows_[i][j] < rows_[i][j + 1])
                    throw domain_error("rows must weakly decrease");
                if (entry(i, j) < entry(i + 1, j))
                    throw domain_error("columns must weakly decrease");
            }
        }
    }

    std::vector<std::vector<long>> rows_;
};

// Semi-standard tableau in the convention used throughout this project:
// weakly decreasing along rows, strictly decreasing down columns.
class SSTableau {
  public:
    SSTableau() = default;
    SSTableau(Partition shape, std::vector<std::vector<long>> entries)
        : shape_(std::move(shape)), t_(std::move(entries)) {
        if (t_.size() != shape_.length()) throw domain_error("tableau row count mismatch");
        for (size_t i = 0; i < t_.size(); ++i) {
            if (static_cast<long>(t_[i].size()) != shape_.part(i))
                throw domain_error("tableau row length mismatch");
            for (size_t j = 0; j < t_[i].size(); ++j) {
                if (t_[i][j] <= 0) throw domain_error("entries must be positive");
                if (j + 1 < t_[i].size() && t_[i][j] < t_[i][j + 1])
                    throw domain_error("rows must weakly decrease");
                if (i + 1 < t_.size() && j < t_[i + 1].size() && t_[i][j] <= t_[i + 1][j])
                    throw domain_error("columns must strictly decrease");
            }
        }
    }

    const Partition& shape() const { return shape_; }
    const std::vector<std::vector<long>>& entries() const { return t_; }
    long entry(size_t i, size_t j) const { return t_[i][j]; }

    friend bool operator==(const SSTableau& a, const SSTableau& b) {
        return a.shape_ == b.shape_ && a.t_ == b.t_;
    }

  private:
    Partition shape_;
    std::vector<std::vector<long>> t_;
};

struct SliceTriple {
    Partition lambda;
    SSTableau T;      // encodes the slices pi(-m), m >= 0
    SSTableau Tprime; // encodes the slices pi(m), m >= 0

    bool operator==(const SliceTriple& o) const {
        return lambda == o.lambda && T == o.T && Tprime == o.Tprime;
    }
};

namespace detail {

// Tableau from a decreasing chain of slices: cell gets m+1 when it lies in
// slices(m) but not slices(m+1).
inline SSTableau tableau_from_slices(const Partition& lambda,
                                     const std::vector<Partition>& slices) {
    std::vector<std::vector<long>> t(lambda.length());
    for (size_t i = 0; i < lambda.length(); ++i) t[i].assign(lambda.part(i), 0);
    for (size_t m = 0; m < slices.size(); ++m) {
        const Partition& cur = slices[m];
        const Partition next = (m + 1 < slices.size()) ? slices[m + 1] : Partition();
        for (size_t i = 0; i < cur.length(); ++i)
            for (long j = next.part(i); j < cur.part(i); ++j)
                t[i][static_cast<size_t>(j)] = static_cast<long>(m) + 1;
    }
    return SSTableau(lambda, std::move(t));
}

// Inverse: slice chain from a tableau; slices(m) = cells with entry > m.
inline std::vector<Partition> slices_from_tableau(const SSTableau& tab) {
    long maxe = 0;
    for (const auto& r : tab.entries())
        for (long v : r) maxe = std::max(maxe, v);
    std::vector<Partition> out;
    for (long m = 0; m < maxe; ++m) {
        std::vector<long> parts;
        for (const auto& r : tab.entries()) {
            long cnt = 0;
            for (long v : r)
                if (v > m) ++cnt;
            if (cnt > 0) parts.push_back(cnt);
        }
        out.emplace_back(std::move(parts));
    }
    return out;
}

} // namespace detail

// Diagonal slicing bijection pi -> (lambda, T, T').
inline SliceTriple slice(const PlanePartition& pi) {
    Partition lambda = pi.slice_at(0);
    std::vector<Partition> neg, pos;
    for (long m = 0;; ++m) {
        Partition s = pi.slice_at(-m);
        if (m > 0 && s.empty()) break;
        neg.push_back(s);
        if (s.empty()) break;
    }
    for (long m = 0;; ++m) {
        Partition s = pi.slice_at(m);
        if (m > 0 && s.empty()) break;
        pos.push_back(s);
        if (s.empty()) break;
    }
    return SliceTriple{lambda, detail::tableau_from_slices(lambda, neg),
                       detail::tableau_from_slices(lambda, pos)};
}

inline PlanePartition unslice(const SliceTriple& triple) {
    if (!(triple.T.shape() == triple.lambda) || !(triple.Tprime.shape() == triple.lambda))
        throw invalid_triple();
    auto neg = detail::slices_from_tableau(triple.T);
    auto pos = detail::slices_from_tableau(triple.Tprime);
    // rebuild entries: pi(i, i+m) from pos slice m, pi(j-m, j) from neg slice m
    size_t nrows = 0, ncols = 0;
    if (!triple.lambda.empty()) {
        nrows = triple.lambda.length() + neg.size();
        ncols = static_cast<size_t>(triple.lambda.part(0)) + pos.size();
    }
    std::vector<std::vector<long>> rows(nrows, std::vector<long>(ncols, 0));
    auto put_diag = [&rows, nrows, ncols](long m, const Partition& s) {
        for (size_t idx = 0; idx < s.length(); ++idx) {
            size_t i, j;
            if (m >= 0) {
                i = idx;
                j = idx + static_cast<size_t>(m);
            } else {
                i = idx + static_cast<size_t>(-m);
                j = idx;
            }
            if (i < nrows && j < ncols) rows[i][j] = s.part(idx);
        }
    };
    for (size_t m = 0; m < neg.size(); ++m) put_diag(-static_cast<long>(m), neg[m]);
    for (size_t m = 0; m < pos.size(); ++m) put_diag(static_cast<long>(m), pos[m]);
    return PlanePartition(std::move(rows));
}

// u-exponents of the two half weights: q^{|pi|} = q^T q^{T'} with
// q^T = prod_m q^{(m+1/2)|pi(-m)/pi(-m-1)|}. In u-units the exponents are
// integers and sum to 2|pi|.
inline std::pair<long, long> weight_split(const PlanePartition& pi) {
    auto half = [&pi](int sign) {
        long e = 0;
        for (long m = 0;; ++m) {
            long cur = pi.slice_at(sign * m).size();
            if (cur == 0) break;
            long next = pi.slice_at(sign * (m + 1)).size();
            e += (2 * m + 1) * (cur - next);
        }
        return e;
    };
    return {half(-1), half(+1)};
}

// All plane partitions with |pi| <= max_size, by row-constrained recursion.
inline std::vector<PlanePartition> enumerate_plane_partitions(long max_size) {
    if (max_size < 0) throw domain_error("max_size must be >= 0");
    std::vector<PlanePartition> out;
    std::vector<std::vector<long>> rows;

    // enumerate rows one by one; each row is a partition bounded entrywise by
    // the previous row, with running total <= max_size
    auto gen_row = [&](auto&& self, long budget) -> void {
        out.emplace_back(PlanePartition(rows));
        if (budget == 0) return;
        const bool has_prev = !rows.empty();
        const std::vector<long> prev = has_prev ? rows.back() : std::vector<long>{};
        // enumerate candidate rows recursively cell by cell
        std::vector<long> row;
        auto gen_cell = [&](auto&& cell_self, long rem) -> void {
            if (!row.empty()) {
                rows.push_back(row);
                self(self, rem);
                rows.pop_back();
            }
            size_t j = row.size();
            long hi = row.empty() ? rem : std::min(rem, row.back());
            if (has_prev) hi = std::min(hi, j < prev.size() ? prev[j] : 0);
            for (long v = hi; v >= 1; --v) {
                row.push_back(v);
                cell_self(cell_self, rem - v);
                row.pop_back();
            }
        };
        gen_cell(gen_cell, budget);
    };
    gen_row(gen_row, max_size);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              out.end());
    return out;
}

} // namespace crystal
