use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{subspace, Matrix};
use crate::field::Field;

use super::algebra::Algebra;

/// A finite-dimensional right module: one `d x d` matrix per algebra basis
/// element, acting on row vectors by `m -> m * A_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
    name: Option<String>,
}

impl<F: Field> Module<F> {
    pub fn new(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Module { algebra, dim, action, name: None };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Module { algebra, dim, action, name: None }
    }

    /// Module from a quiver representation: a space of dimension `dims[v]`
    /// at each vertex and, for each arrow `a: i -> j`, a `dims[i] x dims[j]`
    /// matrix.
    pub fn from_representation(algebra: Arc<Algebra<F>>, dims: &[usize], arrow_maps: &[Matrix<F>]) -> Result<Self> {
        let f = algebra.field().clone();
        if dims.len() != algebra.vertex_count() || arrow_maps.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule("one dimension per vertex and one map per arrow".into()));
        }
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let d: usize = dims.iter().sum();
        let vindex = |name: &str| algebra.vertices().iter().position(|v| v == name).expect("validated quiver");
        let mut arrow_mats = Vec::new();
        for (a, m) in algebra.arrows().iter().zip(arrow_maps) {
            let (s, t) = (vindex(&a.from), vindex(&a.to));
            if m.rows() != dims[s] || m.cols() != dims[t] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.name, dims[s], dims[t]
                )));
            }
            let mut big = Matrix::zeros(&f, d, d);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    big.set(offsets[s] + r, offsets[t] + c, m.get(r, c).clone());
                }
            }
            arrow_mats.push(big);
        }
        let action = algebra
            .basis()
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    let mut e = Matrix::zeros(&f, d, d);
                    for k in 0..dims[p.source] {
                        e.set(offsets[p.source] + k, offsets[p.source] + k, f.one());
                    }
                    e
                } else {
                    p.arrows.iter().skip(1).fold(arrow_mats[p.arrows[0]].clone(), |acc, &a| acc.mul(&arrow_mats[a]))
                }
            })
            .collect();
        Module::new(algebra, d, action)
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field().clone();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(&f, 0, 0)).collect();
        Module { algebra, dim: 0, action, name: Some("0".into()) }
    }

    /// The right regular module `Lambda_Lambda`.
    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field().clone();
        let d = algebra.dim();
        let action = (0..d)
            .map(|b| {
                let rows: Vec<Vec<F::Elem>> = (0..d).map(|i| algebra.product_coords(i, b).to_vec()).collect();
                Matrix::from_rows(&f, d, &rows)
            })
            .collect();
        Module { algebra, dim: d, action, name: Some("Lambda".into()) }
    }

    /// Checks `A_i A_j = sum_k c_ij^k A_k` and that the unit acts as the identity.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = alg.field();
        if self.action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                alg.dim(),
                self.action.len()
            )));
        }
        for m in &self.action {
            if m.field() != f {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::InvalidModule(format!("action matrices must be {0}x{0}", self.dim)));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                if lhs != self.act_matrix(alg.product_coords(i, j)) {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect the product {} * {}",
                        alg.label(i),
                        alg.label(j)
                    )));
                }
            }
        }
        if !self.act_matrix(&alg.one()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, b: usize) -> &Matrix<F> {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("M(dim {})", self.dim))
    }

    /// Matrix by which an algebra element (given in basis coordinates) acts.
    pub fn act_matrix(&self, coords: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let terms: Vec<(F::Elem, &Matrix<F>)> =
            coords.iter().cloned().zip(&self.action).filter(|(c, _)| !f.is_zero(c)).collect();
        Matrix::linear_combination(f, self.dim, self.dim, &terms)
    }

    pub fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `dim M e_v` for each vertex.
    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.algebra.vertex_count()).map(|v| self.action[self.algebra.vertex_basis(v)].rank()).collect()
    }

    /// The submodule generated by the given vectors, as a canonical basis.
    pub fn generated_submodule(&self, vectors: &[Vec<F::Elem>]) -> Matrix<F> {
        let mut rows = Vec::new();
        for v in vectors {
            for a in &self.action {
                rows.push(a.vec_mul(v));
            }
        }
        subspace::span(self.field(), self.dim, &rows)
    }

    pub fn is_submodule(&self, basis: &Matrix<F>) -> bool {
        let generated = self.generated_submodule(&basis.row_vecs());
        generated.rows() == subspace::span(self.field(), self.dim, &basis.row_vecs()).rows()
    }

    /// The submodule spanned by the rows of `basis`, with its inclusion.
    pub fn submodule(&self, basis: &Matrix<F>) -> Result<(Module<F>, ModuleMap<F>)> {
        let f = self.field();
        let b = basis.row_space();
        let k = b.rows();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut rows = Vec::with_capacity(k);
            for r in 0..k {
                let img = a.vec_mul(b.row(r));
                rows.push(
                    subspace::coordinates(&b, &img)
                        .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?,
                );
            }
            action.push(Matrix::from_rows(f, k, &rows));
        }
        let sub = Module::new_unchecked(self.algebra.clone(), k, action);
        let incl = ModuleMap { source: sub.clone(), target: self.clone(), matrix: b };
        Ok((sub, incl))
    }

    /// `M / N` for the submodule `N` spanned by the rows of `basis`, with
    /// the projection.
    pub fn quotient(&self, basis: &Matrix<F>) -> Result<(Module<F>, ModuleMap<F>)> {
        if !self.is_submodule(basis) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let red = Reducer::new(basis.row_space(), self.dim);
        let f = self.field();
        let q = red.codim();
        let proj_rows: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![f.zero(); self.dim];
                e[j] = f.one();
                red.project(&e)
            })
            .collect();
        let proj = Matrix::from_rows(f, q, &proj_rows);
        let action = self
            .action
            .iter()
            .map(|a| {
                let rows: Vec<Vec<F::Elem>> = (0..q).map(|t| red.project(&a.vec_mul(&red.lift(t)))).collect();
                Matrix::from_rows(f, q, &rows)
            })
            .collect();
        let quo = Module::new_unchecked(self.algebra.clone(), q, action);
        Ok((quo.clone(), ModuleMap { source: self.clone(), target: quo, matrix: proj }))
    }

    pub fn power(&self, n: usize) -> Module<F> {
        let parts: Vec<&Module<F>> = std::iter::repeat_n(self, n).collect();
        direct_sum(&self.algebra, &parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "algebra_ref": self.algebra.name(),
            "dim": self.dim,
            "action": self.action.iter().map(Matrix::to_json).collect::<Vec<_>>(),
        });
        if let Some(n) = &self.name {
            v["name"] = serde_json::Value::String(n.clone());
        }
        v
    }

    pub fn from_json(algebra: Arc<Algebra<F>>, v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("module: {m}"));
        let dim = v.get("dim").and_then(|d| d.as_u64()).ok_or_else(|| bad("missing \"dim\""))? as usize;
        let action = v.get("action").and_then(|a| a.as_array()).ok_or_else(|| bad("missing \"action\""))?;
        if let Some(r) = v.get("algebra_ref").and_then(|r| r.as_str()) {
            if r != algebra.name() {
                return Err(Error::AlgebraMismatch);
            }
        }
        let f = algebra.field().clone();
        let mats = action.iter().map(|m| Matrix::from_json(&f, dim, dim, m)).collect::<Result<Vec<_>>>()?;
        let mut m = Module::new(algebra, dim, mats)?;
        m.name = v.get("name").and_then(|n| n.as_str()).map(String::from);
        Ok(m)
    }
}

/// Direct sum of modules over one algebra, blocks in the given order.
pub fn direct_sum<F: Field>(algebra: &Arc<Algebra<F>>, parts: &[&Module<F>]) -> Module<F> {
    let f = algebra.field();
    let dim = parts.iter().map(|m| m.dim).sum();
    let action = (0..algebra.dim())
        .map(|b| {
            let blocks: Vec<&Matrix<F>> = parts.iter().map(|m| &m.action[b]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let mut m = Module::new_unchecked(algebra.clone(), dim, action);
    let names: Vec<String> = parts.iter().map(|p| p.display_name()).collect();
    m.name = match parts.len() {
        0 => Some("0".into()),
        1 => parts[0].name.clone(),
        _ => Some(names.join("+")),
    };
    m
}

/// Projection onto the complement of a row space given in reduced echelon form.
pub(crate) struct Reducer<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    dim: usize,
}

impl<F: Field> Reducer<F> {
    pub fn new(basis: Matrix<F>, dim: usize) -> Self {
        let (basis, pivots) = basis.rref();
        let basis = basis.submatrix(0..pivots.len(), 0..dim);
        let free = (0..dim).filter(|c| !pivots.contains(c)).collect();
        Reducer { basis, pivots, free, dim }
    }

    pub fn codim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of `v` modulo the subspace, on the free columns.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.basis.field();
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if !f.is_zero(&c) {
                for (x, b) in w.iter_mut().zip(self.basis.row(r)) {
                    *x = f.sub(x, &f.mul(&c, b));
                }
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    /// The unit vector at the `t`-th free column.
    pub fn lift(&self, t: usize) -> Vec<F::Elem> {
        let f = self.basis.field();
        let mut e = vec![f.zero(); self.dim];
        e[self.free[t]] = f.one();
        e
    }

    pub fn lift_vec(&self, w: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.basis.field();
        let mut e = vec![f.zero(); self.dim];
        for (t, x) in w.iter().enumerate() {
            e[self.free[t]] = x.clone();
        }
        e
    }
}

/// A module homomorphism `m -> m * matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub source: Module<F>,
    pub target: Module<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: Module<F>, target: Module<F>, matrix: Matrix<F>) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.rows() != source.dim() || matrix.cols() != target.dim() {
            return Err(Error::Shape(format!(
                "map matrix must be {}x{}",
                source.dim(),
                target.dim()
            )));
        }
        for b in source.algebra().generators() {
            if source.action(b).mul(&matrix) != matrix.mul(target.action(b)) {
                return Err(Error::NotAModuleMap);
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &Module<F>) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.field(), m.dim()) }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap<F>) -> Result<Self> {
        if self.target.dim() != next.source.dim() {
            return Err(Error::Shape("maps do not compose".into()));
        }
        Ok(ModuleMap { source: self.source.clone(), target: next.target.clone(), matrix: self.matrix.mul(&next.matrix) })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn kernel_basis(&self) -> Matrix<F> {
        subspace::span(self.source.field(), self.source.dim(), &self.matrix.left_kernel())
    }

    pub fn image_basis(&self) -> Matrix<F> {
        self.matrix.row_space()
    }

    pub fn kernel(&self) -> Result<(Module<F>, ModuleMap<F>)> {
        self.source.submodule(&self.kernel_basis())
    }

    pub fn image(&self) -> Result<(Module<F>, ModuleMap<F>)> {
        self.target.submodule(&self.image_basis())
    }

    pub fn cokernel(&self) -> Result<(Module<F>, ModuleMap<F>)> {
        self.target.quotient(&self.image_basis())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.matrix.inverse().map(|m| ModuleMap { source: self.target.clone(), target: self.source.clone(), matrix: m })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::algebra::AlgebraSpec;
    use crate::field::PrimeField;

    fn a2() -> Arc<Algebra<PrimeField>> {
        Arc::new(AlgebraSpec::a2().build(&PrimeField::new(1009).unwrap()).unwrap())
    }

    #[test]
    fn representation_and_regular_module() {
        let alg = a2();
        let f = *alg.field();
        let i1 = Module::from_representation(alg.clone(), &[1, 1], &[Matrix::from_i64(&f, &[&[1]])]).unwrap();
        assert_eq!(i1.dim(), 2);
        assert_eq!(i1.dim_vector(), vec![1, 1]);
        let reg = Module::regular(alg.clone());
        reg.validate().unwrap();
        assert_eq!(reg.dim_vector(), vec![2, 1]);
    }

    #[test]
    fn rejects_bad_action() {
        let alg = a2();
        let f = *alg.field();
        let bad = Module::new(alg, 1, vec![Matrix::from_i64(&f, &[&[1]]); 3]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn sub_and_quotient() {
        let alg = a2();
        let f = *alg.field();
        let i1 = Module::from_representation(alg.clone(), &[1, 1], &[Matrix::from_i64(&f, &[&[1]])]).unwrap();
        // the vertex-1 line is the socle
        let s = Matrix::from_i64(&f, &[&[1, 0]]);
        let (sub, incl) = i1.submodule(&s).unwrap();
        sub.validate().unwrap();
        assert!(ModuleMap::new(sub, i1.clone(), incl.matrix.clone()).is_ok());
        let (q, proj) = i1.quotient(&s).unwrap();
        q.validate().unwrap();
        assert_eq!(q.dim_vector(), vec![0, 1]);
        assert!(ModuleMap::new(i1.clone(), q, proj.matrix).is_ok());
        assert!(i1.submodule(&Matrix::from_i64(&f, &[&[0, 1]])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let alg = a2();
        let reg = Module::regular(alg.clone());
        let back = Module::from_json(alg, &reg.to_json()).unwrap();
        assert_eq!(back, reg);
    }
}
