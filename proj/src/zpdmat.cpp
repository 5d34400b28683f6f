#include "wittlift/zpdmat.hpp"

#include <sstream>

namespace wittlift {

int NormalFormResult::rank() const {
    int r = 0;
    for (int v : nf.val)
        if (v < R.d) ++r;
    return r;
}

NormalFormResult normal_form(const ZpdRing& R, const ZpdMat& A) {
    NormalFormResult res;
    res.R = R;
    res.rows = A.rows;
    res.cols = A.cols;
    res.nf = smith_normal_form(R, A);
    return res;
}

ZpdMat zmul(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B) {
    require(A.cols == B.rows, errc::shape_mismatch, "matrix product shape");
    ZpdMat C = ZpdMat::zeros(R, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            long a = A.at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = R.add(C.at(i, j), R.mul(a, B.at(k, j)));
        }
    return C;
}

ZpdVec zapply(const ZpdRing& R, const ZpdMat& A, const ZpdVec& x) {
    require(int(x.size()) == A.cols, errc::shape_mismatch, "matrix-vector shape");
    ZpdVec y(size_t(A.rows), 0);
    for (int i = 0; i < A.rows; ++i) {
        long acc = 0;
        for (int j = 0; j < A.cols; ++j) acc = R.add(acc, R.mul(A.at(i, j), x[size_t(j)]));
        y[size_t(i)] = acc;
    }
    return y;
}

ZpdMat zadd(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B) {
    require(A.rows == B.rows && A.cols == B.cols, errc::shape_mismatch, "matrix sum shape");
    ZpdMat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.add(C.a[i], B.a[i]);
    return C;
}

ZpdMat zsub(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B) {
    require(A.rows == B.rows && A.cols == B.cols, errc::shape_mismatch, "matrix diff shape");
    ZpdMat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.sub(C.a[i], B.a[i]);
    return C;
}

ZpdMat zhstack(const ZpdMat& A, const ZpdMat& B) {
    require(A.rows == B.rows, errc::shape_mismatch, "hstack shape");
    ZpdMat C;
    C.rows = A.rows;
    C.cols = A.cols + B.cols;
    C.a.resize(size_t(C.rows) * size_t(C.cols));
    for (int i = 0; i < C.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

ZpdMat zvstack(const ZpdMat& A, const ZpdMat& B) {
    require(A.cols == B.cols, errc::shape_mismatch, "vstack shape");
    ZpdMat C;
    C.rows = A.rows + B.rows;
    C.cols = A.cols;
    C.a = A.a;
    C.a.insert(C.a.end(), B.a.begin(), B.a.end());
    return C;
}

ZpdMat ztranspose(const ZpdMat& A) {
    ZpdMat T;
    T.rows = A.cols;
    T.cols = A.rows;
    T.a.resize(A.a.size());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

ZpdMat zcol(const ZpdMat& A, int j) {
    ZpdMat C;
    C.rows = A.rows;
    C.cols = 1;
    C.a.resize(size_t(A.rows));
    for (int i = 0; i < A.rows; ++i) C.at(i, 0) = A.at(i, j);
    return C;
}

bool zequal(const ZpdMat& A, const ZpdMat& B) {
    return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

bool zis_zero(const ZpdMat& A) {
    for (long v : A.a)
        if (v != 0) return false;
    return true;
}

std::string zstr(const ZpdMat& A) {
    std::ostringstream os;
    for (int i = 0; i < A.rows; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < A.cols; ++j) os << (j ? "," : "") << A.at(i, j);
    }
    os << "]";
    return os.str();
}

bool zsolve(const ZpdRing& R, const NormalFormResult& nf, const ZpdVec& b, ZpdVec& x) {
    return smith_solve(R, nf.nf, nf.rows, nf.cols, b, x);
}

ZpdMat zkernel(const ZpdRing& R, const NormalFormResult& nf) {
    return smith_kernel(R, nf.nf, nf.rows, nf.cols);
}

ZpdMat zinverse(const ZpdRing& R, const ZpdMat& A) {
    require(A.rows == A.cols, errc::shape_mismatch, "inverse of a non-square matrix");
    NormalFormResult nf = normal_form(R, A);
    for (int v : nf.nf.val)
        require(v == 0, errc::not_invertible, "matrix is singular over Z/p^d");
    // A = Uinv D Vinv with D = I, so A^-1 = V U.
    return zmul(R, nf.nf.V, nf.nf.U);
}

bool zspans(const ZpdRing& R, const NormalFormResult& nfA, const ZpdMat& B) {
    require(B.rows == nfA.rows, errc::shape_mismatch, "span membership shape");
    for (int j = 0; j < B.cols; ++j) {
        ZpdVec b(size_t(B.rows));
        for (int i = 0; i < B.rows; ++i) b[size_t(i)] = B.at(i, j);
        ZpdVec x;
        if (!zsolve(R, nfA, b, x)) return false;
    }
    return true;
}

} // namespace wittlift
