#pragma once

#include "ffgs/witt.hpp"

#include <string>
#include <vector>

namespace ffgs {

/// Dense matrix over the chain ring W_m(F_q), row-major.
class ChainMatrix {
  public:
    ChainMatrix() = default;
    ChainMatrix(WittRingPtr ring, int rows, int cols);

    static ChainMatrix identity(const WittRingPtr& ring, int n);
    static ChainMatrix diagonal(const WittRingPtr& ring, const std::vector<WittElem>& d);
    static ChainMatrix from_rows(const WittRingPtr& ring,
                                 const std::vector<std::vector<WittElem>>& rows);

    const WittRingPtr& ring() const noexcept { return ring_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    WittElem& operator()(int i, int j) { return data_[index(i, j)]; }
    const WittElem& operator()(int i, int j) const { return data_[index(i, j)]; }

    bool is_zero() const;
    ChainMatrix block(int i0, int j0, int nrows, int ncols) const;
    ChainMatrix column(int j) const { return block(0, j, rows_, 1); }
    ChainMatrix transpose() const;
    /// The same coefficients read in W_{m'} (reduced when m' < m).
    ChainMatrix with_ring(const WittRingPtr& ring) const;

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    /// row a += c * row b
    void add_row_multiple(int a, int b, const WittElem& c);
    /// col a += c * col b
    void add_col_multiple(int a, int b, const WittElem& c);
    void scale_row(int a, const WittElem& c);
    void scale_col(int a, const WittElem& c);

    std::string to_string() const;

    friend bool operator==(const ChainMatrix& a, const ChainMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               (a.data_.empty() || a.ring_->length() == b.ring_->length());
    }

  private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    WittRingPtr ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<WittElem> data_;
};

ChainMatrix operator*(const ChainMatrix& a, const ChainMatrix& b);
ChainMatrix operator+(const ChainMatrix& a, const ChainMatrix& b);
ChainMatrix operator-(const ChainMatrix& a, const ChainMatrix& b);
ChainMatrix scaled(const WittElem& c, const ChainMatrix& a);
/// Entrywise sigma^power.
ChainMatrix sigma(const ChainMatrix& a, long power);
ChainMatrix hstack(const ChainMatrix& a, const ChainMatrix& b);
ChainMatrix vstack(const ChainMatrix& a, const ChainMatrix& b);
ChainMatrix block_diagonal(const ChainMatrix& a, const ChainMatrix& b);

/// Canonical representative of a coefficient when moving between Witt lengths.
WittElem change_precision(const WittRing& to, const WittElem& a);

} // namespace ffgs
