#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "crystal/errors.hpp"

namespace crystal {

// Integer partition: weakly decreasing positive parts.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<long> parts) : p_(std::move(parts)) {
        while (!p_.empty() && p_.back() == 0) p_.pop_back();
        for (size_t i = 0; i < p_.size(); ++i) {
            if (p_[i] <= 0 || (i > 0 && p_[i] > p_[i - 1]))
                throw domain_error("parts must be positive and weakly decreasing");
        }
    }

    const std::vector<long>& parts() const { return p_; }
    long part(size_t i) const { return i < p_.size() ? p_[i] : 0; } // 1-based via i-1 by caller
    size_t length() const { return p_.size(); }
    bool empty() const { return p_.empty(); }

    long size() const {
        long s = 0;
        for (long x : p_) s += x;
        return s;
    }

    // n(lambda) = sum (i-1) * lambda_i
    long n_stat() const {
        long s = 0;
        for (size_t i = 0; i < p_.size(); ++i) s += static_cast<long>(i) * p_[i];
        return s;
    }

    Partition conjugate() const {
        std::vector<long> t;
        if (p_.empty()) return Partition();
        t.resize(static_cast<size_t>(p_[0]), 0);
        for (long col = 0; col < p_[0]; ++col) {
            long cnt = 0;
            for (long row : p_)
                if (row > col) ++cnt;
            t[static_cast<size_t>(col)] = cnt;
        }
        return Partition(std::move(t));
    }

    bool contains(const Partition& mu) const {
        for (size_t i = 0; i < mu.length(); ++i)
            if (part(i) < mu.part(i)) return false;
        return true;
    }

    // Hook length of the cell (r, c), 0-based, cell must be in the diagram.
    long hook(size_t r, size_t c) const {
        long arm = p_[r] - static_cast<long>(c) - 1;
        long leg = 0;
        for (size_t i = r + 1; i < p_.size(); ++i)
            if (p_[i] > static_cast<long>(c)) ++leg;
        return arm + leg + 1;
    }

    std::vector<long> hooks() const {
        std::vector<long> h;
        for (size_t r = 0; r < p_.size(); ++r)
            for (long c = 0; c < p_[r]; ++c) h.push_back(hook(r, static_cast<size_t>(c)));
        return h;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.p_ < b.p_;
    }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < p_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(p_[i]);
        }
        return s + ")";
    }

  private:
    std::vector<long> p_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << p.to_string();
}

// All partitions with |lambda| <= max_size, ordered by (size, lex).
inline std::vector<Partition> enumerate_partitions(long max_size) {
    if (max_size < 0) throw domain_error("max_size must be >= 0");
    std::vector<Partition> out;
    std::vector<long> cur;
    for (long n = 0; n <= max_size; ++n) {
        // partitions of exactly n, lexicographic
        std::vector<std::vector<long>> level;
        std::vector<long> stack;
        auto rec = [&](auto&& self, long rem, long maxpart) -> void {
            if (rem == 0) {
                level.push_back(stack);
                return;
            }
            for (long k = std::min(rem, maxpart); k >= 1; --k) {
                stack.push_back(k);
                self(self, rem - k, k);
                stack.pop_back();
            }
        };
        rec(rec, n, n == 0 ? 1 : n);
        std::sort(level.begin(), level.end());
        for (auto& v : level) out.emplace_back(std::move(v));
    }
    return out;
}

// All partitions of exactly n.
inline std::vector<Partition> partitions_of(long n) {
    std::vector<Partition> out;
    for (auto& p : enumerate_partitions(n))
        if (p.size() == n) out.push_back(p);
    return out;
}

} // namespace crystal
