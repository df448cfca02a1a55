#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wres/scalar.hpp"

namespace wres {

// Normal-ordered word: all cbar factors (ascending) left of all c factors (ascending).
// Bit k-1 of a mask stands for frame index k.
struct CliffordWord {
    std::uint16_t bar = 0;
    std::uint16_t plain = 0;

    bool empty() const { return bar == 0 && plain == 0; }
    friend bool operator<(const CliffordWord &a, const CliffordWord &b) {
        return a.bar != b.bar ? a.bar < b.bar : a.plain < b.plain;
    }
    friend bool operator==(const CliffordWord &a, const CliffordWord &b) {
        return a.bar == b.bar && a.plain == b.plain;
    }
    std::string to_string() const;
};

// One generator: c(e_index) or cbar(e_index).
struct Generator {
    bool bar = false;
    int index = 1;
};

// Product of two normal-ordered words; returns the sign (+1/-1) and the word.
int word_product(const CliffordWord &a, const CliffordWord &b, CliffordWord &out);

// Normal form of an arbitrary generator sequence by adjacent transpositions.
int normalize_sequence(std::vector<Generator> seq, CliffordWord &out);

class CliffordElement {
public:
    explicit CliffordElement(int n = 4) : n_(n) {}
    static CliffordElement scalar(int n, const Scalar &s);
    static CliffordElement c(int n, int i);
    static CliffordElement cbar(int n, int i);
    static CliffordElement word(int n, const CliffordWord &w, const Scalar &coef = Scalar(1));

    int dim() const { return n_; }
    const std::map<CliffordWord, Scalar> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const CliffordWord &w, const Scalar &s);
    CliffordElement &operator+=(const CliffordElement &o);
    friend CliffordElement operator+(CliffordElement a, const CliffordElement &b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement &b);
    friend CliffordElement operator*(const CliffordElement &a, const Scalar &s);
    friend bool operator==(const CliffordElement &a, const CliffordElement &b);

    std::string to_string() const;

private:
    int n_;
    std::map<CliffordWord, Scalar> terms_;
};

CliffordElement cw_mul(const CliffordElement &a, const CliffordElement &b);
inline CliffordElement operator*(const CliffordElement &a, const CliffordElement &b) { return cw_mul(a, b); }

// 2^n times the coefficient of the empty word.
Scalar cw_trace(const CliffordElement &a);

// Generator matrices on the subset basis of the exterior algebra.
Eigen::MatrixXcd generator_matrix(int n, const Generator &g);
Eigen::MatrixXcd cw_matrix_rep(const CliffordElement &a, const Assignment<double> &asg);

}  // namespace wres
