#include "ffgs/chain_matrix.hpp"

#include "ffgs/error.hpp"

#include <sstream>

namespace ffgs {

ChainMatrix::ChainMatrix(WittRingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    require(ring_ != nullptr, ErrorCode::BadParameter, "matrix without a ring");
    require(rows >= 0 && cols >= 0, ErrorCode::ShapeMismatch, "negative matrix shape");
}

ChainMatrix ChainMatrix::identity(const WittRingPtr& ring, int n) {
    ChainMatrix r(ring, n, n);
    for (int i = 0; i < n; ++i)
        r(i, i) = ring->one();
    return r;
}

ChainMatrix ChainMatrix::diagonal(const WittRingPtr& ring, const std::vector<WittElem>& d) {
    const int n = static_cast<int>(d.size());
    ChainMatrix r(ring, n, n);
    for (int i = 0; i < n; ++i)
        r(i, i) = d[static_cast<std::size_t>(i)];
    return r;
}

ChainMatrix ChainMatrix::from_rows(const WittRingPtr& ring,
                                   const std::vector<std::vector<WittElem>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    ChainMatrix out(ring, r, c);
    for (int i = 0; i < r; ++i) {
        require(static_cast<int>(rows[static_cast<std::size_t>(i)].size()) == c,
                ErrorCode::ShapeMismatch, "ragged matrix rows");
        for (int j = 0; j < c; ++j)
            out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return out;
}

bool ChainMatrix::is_zero() const {
    for (const auto& e : data_)
        if (!(e == WittElem{}))
            return false;
    return true;
}

ChainMatrix ChainMatrix::block(int i0, int j0, int nrows, int ncols) const {
    require(i0 >= 0 && j0 >= 0 && i0 + nrows <= rows_ && j0 + ncols <= cols_,
            ErrorCode::ShapeMismatch, "block outside the matrix");
    ChainMatrix r(ring_, nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j)
            r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
}

ChainMatrix ChainMatrix::transpose() const {
    ChainMatrix r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

WittElem change_precision(const WittRing& to, const WittElem& a) {
    WittElem r{};
    for (int i = 0; i < to.n(); ++i)
        r.c[i] = a.c[i] % to.modulus();
    return r;
}

ChainMatrix ChainMatrix::with_ring(const WittRingPtr& ring) const {
    require(same_field(ring->field(), ring_->field()), ErrorCode::FieldMismatch,
            "precision change across fields");
    ChainMatrix r(ring, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        r.data_[k] = change_precision(*ring, data_[k]);
    return r;
}

void ChainMatrix::swap_rows(int a, int b) {
    if (a == b)
        return;
    for (int j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void ChainMatrix::swap_cols(int a, int b) {
    if (a == b)
        return;
    for (int i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void ChainMatrix::add_row_multiple(int a, int b, const WittElem& c) {
    if (ring_->is_zero(c))
        return;
    for (int j = 0; j < cols_; ++j)
        (*this)(a, j) = ring_->add((*this)(a, j), ring_->mul(c, (*this)(b, j)));
}

void ChainMatrix::add_col_multiple(int a, int b, const WittElem& c) {
    if (ring_->is_zero(c))
        return;
    for (int i = 0; i < rows_; ++i)
        (*this)(i, a) = ring_->add((*this)(i, a), ring_->mul(c, (*this)(i, b)));
}

void ChainMatrix::scale_row(int a, const WittElem& c) {
    for (int j = 0; j < cols_; ++j)
        (*this)(a, j) = ring_->mul(c, (*this)(a, j));
}

void ChainMatrix::scale_col(int a, const WittElem& c) {
    for (int i = 0; i < rows_; ++i)
        (*this)(i, a) = ring_->mul(c, (*this)(i, a));
}

std::string ChainMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << ring_->to_string((*this)(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

namespace {

void check_ring(const ChainMatrix& a, const ChainMatrix& b) {
    require(a.ring()->length() == b.ring()->length() &&
                same_field(a.ring()->field(), b.ring()->field()),
            ErrorCode::FieldMismatch, "matrices over different rings");
}

} // namespace

ChainMatrix operator*(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matrix product shape mismatch");
    const auto& R = *a.ring();
    ChainMatrix r(a.ring(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const WittElem& x = a(i, k);
            if (R.is_zero(x))
                continue;
            for (int j = 0; j < b.cols(); ++j)
                r(i, j) = R.add(r(i, j), R.mul(x, b(k, j)));
        }
    return r;
}

ChainMatrix operator+(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch,
            "matrix sum shape mismatch");
    ChainMatrix r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a.ring()->add(a(i, j), b(i, j));
    return r;
}

ChainMatrix operator-(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch,
            "matrix difference shape mismatch");
    ChainMatrix r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a.ring()->sub(a(i, j), b(i, j));
    return r;
}

ChainMatrix scaled(const WittElem& c, const ChainMatrix& a) {
    ChainMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        r.scale_row(i, c);
    return r;
}

ChainMatrix sigma(const ChainMatrix& a, long power) {
    ChainMatrix r(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a.ring()->sigma(a(i, j), power);
    return r;
}

ChainMatrix hstack(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "hstack row mismatch");
    ChainMatrix r(a.ring(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j)
            r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

ChainMatrix vstack(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    require(a.cols() == b.cols(), ErrorCode::ShapeMismatch, "vstack column mismatch");
    ChainMatrix r(a.ring(), a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i)
            r(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i)
            r(a.rows() + i, j) = b(i, j);
    }
    return r;
}

ChainMatrix block_diagonal(const ChainMatrix& a, const ChainMatrix& b) {
    check_ring(a, b);
    ChainMatrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

} // namespace ffgs
