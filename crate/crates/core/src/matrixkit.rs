//! Matrices over `A`: idempotents, one-sided inverses, unimodular columns and
//! free bases of stably free modules.
//!
//! A homomorphism `f: A^s → A^r` is represented by the `r × s` matrix `F` whose
//! columns are the images of the basis, and acts by `f(a) = (aᵀ Fᵀ)ᵀ`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffring::CoeffElem;
use crate::error::{Error, Result};
use crate::modules::{LiftBasis, LiftMode};
use crate::poly::{Algebra, NCPolynomial};

#[derive(Clone)]
pub struct MatrixOverA {
    alg: Algebra,
    rows: usize,
    cols: usize,
    /// Row-major.
    entries: Vec<NCPolynomial>,
}

impl MatrixOverA {
    pub fn from_rows(alg: &Algebra, rows: Vec<Vec<NCPolynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Shape("rows of different lengths".into()));
            }
            for e in row {
                if !e.algebra().ptr_eq(alg) {
                    return Err(Error::MixedAlgebras);
                }
                entries.push(e);
            }
        }
        Ok(MatrixOverA {
            alg: alg.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn zeros(alg: &Algebra, rows: usize, cols: usize) -> Self {
        MatrixOverA {
            alg: alg.clone(),
            rows,
            cols,
            entries: vec![NCPolynomial::zero(alg); rows * cols],
        }
    }

    pub fn identity(alg: &Algebra, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, NCPolynomial::one(alg));
        }
        m
    }

    /// A column vector.
    pub fn column(alg: &Algebra, entries: Vec<NCPolynomial>) -> Result<Self> {
        Self::from_rows(alg, entries.into_iter().map(|e| vec![e]).collect())
    }

    pub fn from_rationals(alg: &Algebra, rows: &[Vec<BigRational>]) -> Result<Self> {
        Self::from_rows(
            alg,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|q| NCPolynomial::constant(alg, CoeffElem::from_rational(q.clone())))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NCPolynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<NCPolynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<NCPolynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<NCPolynomial>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.alg, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.alg.ptr_eq(&other.alg) {
            return Err(Error::MixedAlgebras);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.alg, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NCPolynomial::zero(&self.alg);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == NCPolynomial::one(&self.alg)
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Entries as rationals, if every entry is a rational constant.
    pub fn as_rationals(&self) -> Result<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.as_coefficient()
                            .and_then(|c| {
                                c.as_constant()
                                    .or_else(|| c.is_zero().then(BigRational::zero))
                            })
                            .ok_or_else(|| Error::NotConstant(e.render()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl PartialEq for MatrixOverA {
    fn eq(&self, other: &Self) -> bool {
        self.alg.ptr_eq(&other.alg)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl fmt::Debug for MatrixOverA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `Fᵀ Fᵀ = Fᵀ`.
pub fn is_idempotent_transpose(f: &MatrixOverA) -> Result<bool> {
    if !f.is_square() {
        return Err(Error::Shape(format!(
            "{}x{} matrix is not square",
            f.rows, f.cols
        )));
    }
    let t = f.transpose();
    Ok(t.mul(&t)? == t)
}

/// `X` with `X F = I`, or `None` when the standard rows are not left
/// combinations of the rows of `F`.
pub fn left_inverse(f: &MatrixOverA) -> Result<Option<MatrixOverA>> {
    let (r, s) = (f.rows, f.cols);
    if s == 0 || r < s {
        return Err(Error::Shape(format!(
            "a {r}x{s} matrix cannot have a left inverse"
        )));
    }
    let alg = f.algebra();
    let basis = LiftBasis::new(alg, s, f.to_rows(), LiftMode::Schreyer)?;
    let mut x_rows = Vec::with_capacity(s);
    for k in 0..s {
        let target: Vec<NCPolynomial> = (0..s)
            .map(|j| {
                if j == k {
                    NCPolynomial::one(alg)
                } else {
                    NCPolynomial::zero(alg)
                }
            })
            .collect();
        match basis.lift(&target)? {
            Some(row) => x_rows.push(row),
            None => return Ok(None),
        }
    }
    let x = MatrixOverA::from_rows(alg, x_rows)?;
    if !x.mul(f)?.is_identity() {
        return Err(Error::Verification(
            "left inverse does not satisfy XF = I".into(),
        ));
    }
    Ok(Some(x))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Unimodularity {
    pub unimodular: bool,
    /// A row `c` with `c v = 1`.
    pub certificate: Option<Vec<NCPolynomial>>,
}

fn unit_of_a(p: &NCPolynomial) -> Option<CoeffElem> {
    let c = p.as_coefficient()?;
    p.algebra().ring().unit_inverse(&c)
}

/// Whether the entries of the column `v` generate the unit left ideal.
pub fn is_unimodular_column(v: &MatrixOverA) -> Result<Unimodularity> {
    if v.cols != 1 || v.rows == 0 {
        return Err(Error::Shape("expected a nonempty column".into()));
    }
    let entries = v.col(0);
    if entries.iter().all(NCPolynomial::is_zero) {
        return Err(Error::Shape("zero column".into()));
    }
    let alg = v.algebra();
    if let Some((k, inv)) = entries
        .iter()
        .enumerate()
        .find_map(|(k, e)| unit_of_a(e).map(|inv| (k, inv)))
    {
        let mut cert = vec![NCPolynomial::zero(alg); entries.len()];
        cert[k] = NCPolynomial::constant(alg, inv);
        return Ok(Unimodularity {
            unimodular: true,
            certificate: Some(cert),
        });
    }
    let x = left_inverse(v)?;
    Ok(Unimodularity {
        unimodular: x.is_some(),
        certificate: x.map(|m| m.row(0)),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization {
    pub u: MatrixOverA,
    pub u_inv: MatrixOverA,
    pub rank: usize,
}

type QMat = Vec<Vec<BigRational>>;

fn q_identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn q_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

/// `diag(1, M)`.
fn q_bordered(m: &QMat) -> QMat {
    let n = m.len() + 1;
    let mut out = q_identity(n);
    for i in 1..n {
        for j in 1..n {
            out[i][j] = m[i - 1][j - 1].clone();
        }
    }
    out
}

/// Returns `(U, U⁻¹, d)` with `U F U⁻¹ = diag(d)`, `d_i ∈ {0, 1}`.
fn kaplansky(f: &QMat) -> Result<(QMat, QMat, Vec<bool>)> {
    let s = f.len();
    if s == 0 {
        return Ok((Vec::new(), Vec::new(), Vec::new()));
    }
    let one = BigRational::one();
    let f11 = &f[0][0];
    let (g, g_inv, head) = if !f11.is_zero() {
        // G = [1, f11⁻¹ f1j ; -fi1 f11⁻¹, I]
        let inv = f11.recip();
        let mut g = q_identity(s);
        let mut gi = q_identity(s);
        gi[0][0] = f11.clone();
        for j in 1..s {
            g[0][j] = &inv * &f[0][j];
            gi[0][j] = -&f[0][j];
        }
        for i in 1..s {
            g[i][0] = -(&f[i][0] * &inv);
            gi[i][0] = f[i][0].clone();
            for j in 1..s {
                let delta = if i == j {
                    one.clone()
                } else {
                    BigRational::zero()
                };
                gi[i][j] = delta - &f[i][0] * &inv * &f[0][j];
            }
        }
        (g, gi, true)
    } else {
        // 1 - f11 = 1 is invertible: H = [1, -f1j ; fi1, δij - fi1 f1j]
        let inv = (&one - f11).recip();
        let mut h = q_identity(s);
        let mut hi = q_identity(s);
        hi[0][0] = &one - f11;
        for j in 1..s {
            h[0][j] = -(&inv * &f[0][j]);
            hi[0][j] = &inv * &f[0][j];
        }
        for i in 1..s {
            h[i][0] = f[i][0].clone();
            hi[i][0] = -&f[i][0];
            for j in 1..s {
                let delta = if i == j {
                    one.clone()
                } else {
                    BigRational::zero()
                };
                h[i][j] = delta - &f[i][0] * &inv * &f[0][j];
            }
        }
        (h, hi, false)
    };
    let conj = q_mul(&q_mul(&g, f), &g_inv);
    let expect_head = if head {
        one.clone()
    } else {
        BigRational::zero()
    };
    if conj[0][0] != expect_head || (1..s).any(|k| !conj[0][k].is_zero() || !conj[k][0].is_zero()) {
        return Err(Error::Verification(
            "elimination did not split off a block".into(),
        ));
    }
    let lower: QMat = conj[1..].iter().map(|r| r[1..].to_vec()).collect();
    let (u1, u1_inv, d1) = kaplansky(&lower)?;
    let u = q_mul(&q_bordered(&u1), &g);
    let u_inv = q_mul(&g_inv, &q_bordered(&u1_inv));
    let mut d = vec![head];
    d.extend(d1);
    Ok((u, u_inv, d))
}

/// Conjugates an idempotent matrix with rational entries to
/// `diag(0_{s-r}, I_r)`.
pub fn idempotent_diagonalize_division(f: &MatrixOverA) -> Result<Diagonalization> {
    if !f.is_square() {
        return Err(Error::Shape(format!(
            "{}x{} matrix is not square",
            f.rows, f.cols
        )));
    }
    let q = f.as_rationals()?;
    if q_mul(&q, &q) != q {
        return Err(Error::NotIdempotent("matrix is not idempotent".into()));
    }
    let s = q.len();
    let (u, u_inv, d) = kaplansky(&q)?;
    let perm: Vec<usize> = (0..s)
        .filter(|&i| !d[i])
        .chain((0..s).filter(|&i| d[i]))
        .collect();
    let mut p = vec![vec![BigRational::zero(); s]; s];
    let mut pt = vec![vec![BigRational::zero(); s]; s];
    for (k, &src) in perm.iter().enumerate() {
        p[k][src] = BigRational::one();
        pt[src][k] = BigRational::one();
    }
    let u = q_mul(&p, &u);
    let u_inv = q_mul(&u_inv, &pt);
    let rank = d.iter().filter(|&&b| b).count();

    let mut canonical = vec![vec![BigRational::zero(); s]; s];
    for (k, row) in canonical.iter_mut().enumerate().skip(s - rank) {
        row[k] = BigRational::one();
    }
    if q_mul(&q_mul(&u, &q), &u_inv) != canonical || q_mul(&u, &u_inv) != q_identity(s) {
        return Err(Error::Verification("conjugation is not canonical".into()));
    }
    let alg = f.algebra();
    Ok(Diagonalization {
        u: MatrixOverA::from_rationals(alg, &u)?,
        u_inv: MatrixOverA::from_rationals(alg, &u_inv)?,
        rank,
    })
}

/// `U` with `U G1ᵀ = [I_s; 0]` and `Uᵀ` invertible gives the free basis of
/// `ker(g1)` as the last `r - s` columns of `Uᵀ`. `G1` is `s × r`.
pub fn extract_free_basis(g1: &MatrixOverA, u: &MatrixOverA) -> Result<Vec<Vec<NCPolynomial>>> {
    let (s, r) = (g1.rows, g1.cols);
    if u.rows != r || u.cols != r || s > r {
        return Err(Error::Shape(format!(
            "need G1 of size s x r with s <= r and U of size r x r (got {}x{} and {}x{})",
            g1.rows, g1.cols, u.rows, u.cols
        )));
    }
    let alg = g1.algebra();
    let prod = u.mul(&g1.transpose())?;
    for i in 0..r {
        for j in 0..s {
            let e = prod.get(i, j);
            let ok = if i == j {
                *e == NCPolynomial::one(alg)
            } else {
                e.is_zero()
            };
            if !ok {
                return Err(Error::Verification("U G1ᵀ is not [I_s; 0]".into()));
            }
        }
    }
    let ut = u.transpose();
    let Some(x) = left_inverse(&ut)? else {
        return Err(Error::Verification("Uᵀ has no left inverse".into()));
    };
    if !ut.mul(&x)?.is_identity() {
        return Err(Error::Verification("Uᵀ is not invertible".into()));
    }
    let basis: Vec<Vec<NCPolynomial>> = (s..r).map(|k| ut.col(k)).collect();
    for c in &basis {
        let row = MatrixOverA::from_rows(alg, vec![c.clone()])?;
        let image = row.mul(&g1.transpose())?;
        if (0..s).any(|j| !image.get(0, j).is_zero()) {
            return Err(Error::Verification("basis vector not in the kernel".into()));
        }
    }
    Ok(basis)
}

/// True when no nonzero left combination `Σ a_k v_k` vanishes.
pub fn left_independent(alg: &Algebra, vectors: &[Vec<NCPolynomial>]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let len = vectors[0].len();
    let basis = LiftBasis::new(alg, len, vectors.to_vec(), LiftMode::Full)?;
    Ok(basis.syzygies().is_empty())
}

/// For a column with a unit entry, an invertible `U` (swap, scaling and
/// eliminations) with `U v = e_1`.
pub fn complete_unimodular_unit_entry(v: &MatrixOverA) -> Result<MatrixOverA> {
    if v.cols != 1 || v.rows == 0 {
        return Err(Error::Shape("expected a nonempty column".into()));
    }
    let alg = v.algebra();
    let n = v.rows;
    let entries = v.col(0);
    let Some((k, inv)) = entries
        .iter()
        .enumerate()
        .find_map(|(k, e)| unit_of_a(e).map(|inv| (k, inv)))
    else {
        return Err(Error::StabilityNotDecided(
            "no entry is a unit; only the unit-entry case is implemented".into(),
        ));
    };
    let mut p = MatrixOverA::identity(alg, n);
    if k != 0 {
        p.set(0, 0, NCPolynomial::zero(alg));
        p.set(k, k, NCPolynomial::zero(alg));
        p.set(0, k, NCPolynomial::one(alg));
        p.set(k, 0, NCPolynomial::one(alg));
    }
    let mut scale = MatrixOverA::identity(alg, n);
    scale.set(0, 0, NCPolynomial::constant(alg, inv));
    let sp = scale.mul(&p)?;
    let w = sp.mul(v)?;
    let mut elim = MatrixOverA::identity(alg, n);
    for i in 1..n {
        elim.set(i, 0, -w.get(i, 0));
    }
    let u = elim.mul(&sp)?;
    let mut e1 = MatrixOverA::zeros(alg, n, 1);
    e1.set(0, 0, NCPolynomial::one(alg));
    if u.mul(v)? != e1 {
        return Err(Error::Verification("U v is not e_1".into()));
    }
    Ok(u)
}
