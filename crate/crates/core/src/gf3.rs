//! Exact arithmetic and linear algebra over GF(3), the field with three
//! elements {0, 1, 2}.
//!
//! Everything downstream (flow verification, the brute-force oracle, the
//! constraint-subspace solver) reduces to row operations over this field, so
//! the module keeps three guarantees front and centre:
//!
//! * arithmetic is exact — no floating point anywhere;
//! * elimination is deterministic — pivots are chosen by column order, ties
//!   broken by lowest original row index, so identical inputs always produce
//!   identical echelon forms, kernels, and dependency certificates;
//! * every reduced row remembers the combination of input rows that produced
//!   it, which is what lets a rank deficiency be turned into an explicit
//!   linear dependency rather than a bare boolean.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of GF(3). The wrapped residue is always in `0..=2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf3(u8);

pub const ZERO: Gf3 = Gf3(0);
pub const ONE: Gf3 = Gf3(1);
pub const TWO: Gf3 = Gf3(2);

impl Gf3 {
    /// Wraps a residue that is already reduced. Panics on values >= 3; use
    /// [`Gf3::from_int`] for arbitrary integers.
    pub fn new(residue: u8) -> Self {
        assert!(residue < 3, "residue {residue} out of range for GF(3)");
        Gf3(residue)
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_int(value: i64) -> Self {
        Gf3(value.rem_euclid(3) as u8)
    }

    pub fn residue(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero. In GF(3) every nonzero
    /// element is its own inverse: 1·1 = 1 and 2·2 = 4 ≡ 1.
    pub fn inverse(self) -> Option<Gf3> {
        if self.0 == 0 {
            None
        } else {
            Some(self)
        }
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + rhs.0) % 3)
    }
}

impl AddAssign for Gf3 {
    fn add_assign(&mut self, rhs: Gf3) {
        *self = *self + rhs;
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    fn sub(self, rhs: Gf3) -> Gf3 {
        Gf3((3 + self.0 - rhs.0) % 3)
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}

impl fmt::Debug for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A dense vector over GF(3) with a fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf3Vector {
    coords: Vec<Gf3>,
}

impl Gf3Vector {
    pub fn zeros(dim: usize) -> Self {
        Gf3Vector {
            coords: vec![ZERO; dim],
        }
    }

    pub fn from_coords(coords: Vec<Gf3>) -> Self {
        Gf3Vector { coords }
    }

    /// Convenience for literals in tests: reduces each entry mod 3.
    pub fn from_ints(values: &[i64]) -> Self {
        Gf3Vector {
            coords: values.iter().map(|&v| Gf3::from_int(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, index: usize) -> Gf3 {
        self.coords[index]
    }

    pub fn set(&mut self, index: usize, value: Gf3) {
        self.coords[index] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = Gf3> + '_ {
        self.coords.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Standard dot product. Panics on dimension mismatch: mixing vectors
    /// from different coordinate spaces is a programming error.
    pub fn dot(&self, other: &Gf3Vector) -> Gf3 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dot product dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
        let mut acc = ZERO;
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            acc += *a * *b;
        }
        acc
    }

    /// `self += scale * other`, the elimination workhorse.
    pub fn add_scaled(&mut self, other: &Gf3Vector, scale: Gf3) {
        assert_eq!(self.dim(), other.dim(), "add_scaled dimension mismatch");
        if scale.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(other.coords.iter()) {
            *a += scale * *b;
        }
    }

    pub fn scaled(&self, scale: Gf3) -> Gf3Vector {
        Gf3Vector {
            coords: self.coords.iter().map(|&c| c * scale).collect(),
        }
    }

    pub fn negated(&self) -> Gf3Vector {
        Gf3Vector {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }

    pub fn plus(&self, other: &Gf3Vector) -> Gf3Vector {
        let mut out = self.clone();
        out.add_scaled(other, ONE);
        out
    }
}

impl fmt::Debug for Gf3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A row matrix over GF(3). Each row carries a caller-supplied label (a
/// vertex, a generator tag, …) so that certificates coming out of the
/// elimination can be reported in the caller's vocabulary.
#[derive(Clone, Debug)]
pub struct Gf3Matrix<L> {
    dim: usize,
    rows: Vec<Gf3Vector>,
    labels: Vec<L>,
}

impl<L: Clone + PartialEq + fmt::Debug> Gf3Matrix<L> {
    /// Builds a matrix from labelled rows. All rows must share `dim`
    /// coordinates and labels must be pairwise distinct.
    pub fn new(dim: usize, rows: Vec<(L, Gf3Vector)>) -> Self {
        let mut vectors = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (label, row) in rows {
            assert_eq!(
                row.dim(),
                dim,
                "row {label:?} has dimension {}, expected {dim}",
                row.dim()
            );
            assert!(
                !labels.contains(&label),
                "duplicate row label {label:?} in matrix"
            );
            vectors.push(row);
            labels.push(label);
        }
        Gf3Matrix {
            dim,
            rows: vectors,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Gf3Vector] {
        &self.rows
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }
}

/// Reduced row echelon form of a matrix, together with the bookkeeping
/// needed to reconstruct kernels and dependency certificates.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    dim: usize,
    original_rows: usize,
    /// Nonzero reduced rows, ordered by pivot column. Row `i` has a leading
    /// 1 in `pivot_columns[i]` and zeros in every other pivot column.
    pub reduced_rows: Vec<Gf3Vector>,
    /// For each reduced row, the combination of original rows producing it
    /// (a vector of length `original_rows`).
    pub elimination_record: Vec<Gf3Vector>,
    pub pivot_columns: Vec<usize>,
    pub free_columns: Vec<usize>,
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        self.reduced_rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn original_rows(&self) -> usize {
        self.original_rows
    }
}

/// Full elimination state, including the transformation rows of inputs that
/// reduced to zero. Only the zero-row records are interesting beyond
/// [`EchelonForm`]: each one is an explicit linear dependency.
struct Elimination {
    echelon: EchelonForm,
    /// For each original row that reduced to zero (ascending original
    /// index), the combination of original rows that sums to zero.
    zero_row_records: Vec<Gf3Vector>,
}

fn eliminate<L: Clone + PartialEq + fmt::Debug>(matrix: &Gf3Matrix<L>) -> Elimination {
    let n_rows = matrix.row_count();
    let dim = matrix.dim();
    let mut work: Vec<Gf3Vector> = matrix.rows().to_vec();
    // Transformation matrix, starting as the identity: record[i] expresses
    // work[i] as a combination of the original rows at every step.
    let mut record: Vec<Gf3Vector> = (0..n_rows)
        .map(|i| {
            let mut r = Gf3Vector::zeros(n_rows);
            r.set(i, ONE);
            r
        })
        .collect();

    let mut pivot_of_row: Vec<Option<usize>> = vec![None; n_rows];
    let mut pivot_columns = Vec::new();

    for col in 0..dim {
        // Lowest-index unused row with a nonzero entry in this column.
        let pivot_row = (0..n_rows)
            .find(|&r| pivot_of_row[r].is_none() && !work[r].get(col).is_zero());
        let Some(p) = pivot_row else { continue };
        pivot_of_row[p] = Some(col);
        pivot_columns.push(col);

        let inv = work[p].get(col).inverse().expect("pivot entry is nonzero");
        work[p] = work[p].scaled(inv);
        record[p] = record[p].scaled(inv);

        for r in 0..n_rows {
            if r == p {
                continue;
            }
            let factor = work[r].get(col);
            if factor.is_zero() {
                continue;
            }
            let (pivot_vec, pivot_rec) = (work[p].clone(), record[p].clone());
            work[r].add_scaled(&pivot_vec, -factor);
            record[r].add_scaled(&pivot_rec, -factor);
        }
    }

    // Reduced rows ordered by pivot column; the remaining rows are zero and
    // their records are dependency certificates.
    let mut by_pivot: Vec<(usize, usize)> = (0..n_rows)
        .filter_map(|r| pivot_of_row[r].map(|c| (c, r)))
        .collect();
    by_pivot.sort_unstable();

    let mut reduced_rows = Vec::with_capacity(by_pivot.len());
    let mut elimination_record = Vec::with_capacity(by_pivot.len());
    for &(_, r) in &by_pivot {
        reduced_rows.push(work[r].clone());
        elimination_record.push(record[r].clone());
    }

    let mut zero_row_records = Vec::new();
    for r in 0..n_rows {
        if pivot_of_row[r].is_none() {
            debug_assert!(work[r].is_zero(), "non-pivot row survived elimination");
            zero_row_records.push(record[r].clone());
        }
    }

    let free_columns = (0..dim)
        .filter(|c| !pivot_columns.contains(c))
        .collect();

    Elimination {
        echelon: EchelonForm {
            dim,
            original_rows: n_rows,
            reduced_rows,
            elimination_record,
            pivot_columns,
            free_columns,
        },
        zero_row_records,
    }
}

/// Reduced row echelon form by deterministic Gauss–Jordan elimination.
pub fn rref<L: Clone + PartialEq + fmt::Debug>(matrix: &Gf3Matrix<L>) -> EchelonForm {
    eliminate(matrix).echelon
}

/// A basis of the kernel (right null space) of a matrix, parametrised by its
/// free columns: every kernel member is determined by its values on the free
/// columns, and `coefficients` spells out each non-free coordinate as a
/// linear combination of the free ones.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub dim: usize,
    /// One basis vector per free column, in free-column order. Basis vector
    /// `i` has value 1 at `free_columns[i]` and 0 at every other free column.
    pub basis: Vec<Gf3Vector>,
    pub free_columns: Vec<usize>,
    /// `(column, weights)` for each non-free (pivot) column: the coordinate
    /// at `column` of any kernel member equals `weights · (values on the
    /// free columns, in free-column order)`.
    pub coefficients: Vec<(usize, Gf3Vector)>,
}

impl KernelBasis {
    /// Rebuilds the unique kernel member taking the given values on the free
    /// columns. The inverse of restriction-to-free-columns.
    pub fn reconstruct(&self, free_values: &Gf3Vector) -> Gf3Vector {
        assert_eq!(
            free_values.dim(),
            self.free_columns.len(),
            "expected one value per free column"
        );
        let mut out = Gf3Vector::zeros(self.dim);
        for (i, &col) in self.free_columns.iter().enumerate() {
            out.set(col, free_values.get(i));
        }
        for (col, weights) in &self.coefficients {
            out.set(*col, weights.dot(free_values));
        }
        out
    }
}

/// Kernel of a matrix, from its echelon form. For a reduced row with pivot
/// column p, the kernel constraint reads x_p = -Σ_f row[f]·x_f over the free
/// columns f.
pub fn kernel_basis<L: Clone + PartialEq + fmt::Debug>(matrix: &Gf3Matrix<L>) -> KernelBasis {
    kernel_from_echelon(&rref(matrix))
}

pub fn kernel_from_echelon(echelon: &EchelonForm) -> KernelBasis {
    let free = &echelon.free_columns;
    let mut coefficients = Vec::with_capacity(echelon.pivot_columns.len());
    for (i, &p) in echelon.pivot_columns.iter().enumerate() {
        let row = &echelon.reduced_rows[i];
        let weights =
            Gf3Vector::from_coords(free.iter().map(|&f| -row.get(f)).collect());
        coefficients.push((p, weights));
    }

    let mut basis = Vec::with_capacity(free.len());
    for (i, &f) in free.iter().enumerate() {
        let mut v = Gf3Vector::zeros(echelon.dim);
        v.set(f, ONE);
        for (p, weights) in &coefficients {
            v.set(*p, weights.get(i));
        }
        basis.push(v);
    }

    KernelBasis {
        dim: echelon.dim,
        basis,
        free_columns: free.clone(),
        coefficients,
    }
}

/// An explicit linear dependency among labelled rows: the recorded
/// combination sums to the zero vector and has at least one nonzero
/// coefficient. Only nonzero coefficients are listed.
#[derive(Clone, Debug)]
pub struct DependencyCombination<L> {
    pub coefficients: Vec<(L, Gf3)>,
}

/// Searches for a linear dependency among the rows. Returns `None` exactly
/// when the rows are linearly independent; otherwise the certificate from
/// the first (lowest original index) row that eliminated to zero.
pub fn dependency_combination<L: Clone + PartialEq + fmt::Debug>(
    matrix: &Gf3Matrix<L>,
) -> Option<DependencyCombination<L>> {
    let elimination = eliminate(matrix);
    let record = elimination.zero_row_records.first()?;

    let coefficients: Vec<(L, Gf3)> = record
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (matrix.labels()[i].clone(), c))
        .collect();
    debug_assert!(!coefficients.is_empty(), "zero-row record cannot be empty");

    if cfg!(debug_assertions) {
        // The certificate must genuinely sum to zero.
        let mut total = Gf3Vector::zeros(matrix.dim());
        for (label, coeff) in &coefficients {
            let idx = matrix
                .labels()
                .iter()
                .position(|l| l == label)
                .expect("label comes from this matrix");
            total.add_scaled(&matrix.rows()[idx], *coeff);
        }
        debug_assert!(total.is_zero(), "dependency certificate does not sum to zero");
    }

    Some(DependencyCombination { coefficients })
}
