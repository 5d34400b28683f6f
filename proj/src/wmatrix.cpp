#include "wittlift/wmatrix.hpp"

#include <sstream>

namespace wittlift {

WMatrix WMatrix::zeros(const WittRing* W, int r, int c) {
    WMatrix m;
    m.W = W;
    m.rows = r;
    m.cols = c;
    m.a.assign(static_cast<size_t>(r) * static_cast<size_t>(c), W->zero());
    return m;
}

WMatrix WMatrix::identity(const WittRing* W, int n) {
    WMatrix m = zeros(W, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = W->one();
    return m;
}

WMatrix WMatrix::operator*(const WMatrix& o) const {
    require(W == o.W, errc::mixed_rings, "matrix product over different rings");
    require(cols == o.rows, errc::shape_mismatch, "matrix product shape");
    WMatrix C = zeros(W, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const WittVec& s = at(i, k);
            if (s.is_zero()) continue;
            for (int j = 0; j < o.cols; ++j) C.at(i, j) = C.at(i, j) + s * o.at(k, j);
        }
    return C;
}

WMatrix WMatrix::operator+(const WMatrix& o) const {
    require(W == o.W && rows == o.rows && cols == o.cols, errc::shape_mismatch, "matrix sum shape");
    WMatrix C = *this;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = C.a[i] + o.a[i];
    return C;
}

WMatrix WMatrix::operator-(const WMatrix& o) const {
    require(W == o.W && rows == o.rows && cols == o.cols, errc::shape_mismatch, "matrix diff shape");
    WMatrix C = *this;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = C.a[i] - o.a[i];
    return C;
}

WMatrix WMatrix::scaled(const WittVec& s) const {
    WMatrix C = *this;
    for (auto& v : C.a) v = v * s;
    return C;
}

WMatrix WMatrix::transpose() const {
    WMatrix T = zeros(W, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

bool WMatrix::operator==(const WMatrix& o) const {
    return W == o.W && rows == o.rows && cols == o.cols && a == o.a;
}

std::vector<WittVec> WMatrix::apply(const std::vector<WittVec>& x) const {
    require(int(x.size()) == cols, errc::shape_mismatch, "matrix-vector shape");
    std::vector<WittVec> y(static_cast<size_t>(rows), W->zero());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) y[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + at(i, j) * x[static_cast<size_t>(j)];
    return y;
}

WMatrix WMatrix::reduced(int r) const {
    const WittRing* Wr = WittRing::get(W->field(), r);
    WMatrix C = zeros(Wr, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) C.a[i] = W->reduce(a[i], r);
    return C;
}

WMatrix WMatrix::lifted(const WittRing* Wbig) const {
    WMatrix C = zeros(Wbig, rows, cols);
    for (size_t i = 0; i < a.size(); ++i) C.a[i] = Wbig->lift_pad(a[i]);
    return C;
}

WMatrix WMatrix::frobenius(int i) const {
    WMatrix C = *this;
    for (auto& v : C.a) v = W->frobenius(v, i);
    return C;
}

WMatrix WMatrix::inverse() const {
    require(rows == cols, errc::shape_mismatch, "inverse of a non-square matrix");
    WittSmith nf = wsnf(*this);
    for (int v : nf.val)
        require(v == 0, errc::not_invertible, "matrix is singular over W_d(F_q)");
    WittElemRing R{W};
    // A = Uinv D Vinv with D = I
    WMatrix out = zeros(W, rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) {
            WittVec acc = W->zero();
            for (int k = 0; k < rows; ++k) acc = acc + nf.V.at(i, k) * nf.U.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

std::string WMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

WMatrix whstack(const WMatrix& A, const WMatrix& B) {
    require(A.W == B.W && A.rows == B.rows, errc::shape_mismatch, "hstack shape");
    WMatrix C = WMatrix::zeros(A.W, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

WMatrix wvstack(const WMatrix& A, const WMatrix& B) {
    require(A.W == B.W && A.cols == B.cols, errc::shape_mismatch, "vstack shape");
    WMatrix C = WMatrix::zeros(A.W, A.rows + B.rows, A.cols);
    C.a = A.a;
    C.a.insert(C.a.end(), B.a.begin(), B.a.end());
    return C;
}

WMatrix wkron(const WMatrix& A, const WMatrix& B) {
    require(A.W == B.W, errc::mixed_rings, "Kronecker product over different rings");
    WMatrix C = WMatrix::zeros(A.W, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            if (A.at(i, j).is_zero()) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    C.at(i * B.rows + k, j * B.cols + l) = A.at(i, j) * B.at(k, l);
        }
    return C;
}

namespace {
SmithMat<WittElemRing> to_smith(const WMatrix& A) {
    SmithMat<WittElemRing> M;
    M.rows = A.rows;
    M.cols = A.cols;
    M.a = A.a;
    return M;
}
} // namespace

WittSmith wsnf(const WMatrix& A) {
    WittElemRing R{A.W};
    return smith_normal_form(R, to_smith(A));
}

bool wsolve(const WMatrix& A, const WittSmith& nf, const std::vector<WittVec>& b,
            std::vector<WittVec>& x) {
    WittElemRing R{A.W};
    return smith_solve(R, nf, A.rows, A.cols, b, x);
}

WMatrix wkernel(const WMatrix& A, const WittSmith& nf) {
    WittElemRing R{A.W};
    auto K = smith_kernel(R, nf, A.rows, A.cols);
    WMatrix out;
    out.W = A.W;
    out.rows = K.rows;
    out.cols = K.cols;
    out.a = std::move(K.a);
    return out;
}

} // namespace wittlift
