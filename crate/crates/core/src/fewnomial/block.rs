//! Block systems: `m` unit equations and `k-1` disjoint copies of an
//! `ℓ×ℓ (ℓ+2)`-nomial base with `ℓ+1` phase-1 roots.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::system::{gen_g_eps, SparseSystem};
use super::verify::{certify_circuit_local, certify_circuit_real, check_local_eps, Status};
use crate::error::{Error, Result};
use crate::nonarch::SparsePoly;
use crate::numeric::local::{local_roots, PhaseFilter};
use crate::numeric::sturm::SturmSequence;
use crate::numeric::{FieldElement, FieldKind, FieldSpec, LocalField, PrecisionPolicy, Rational, Ring, UniPoly};
use crate::polyhedra::Point;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub m: usize,
    /// Variable indices of each block: `m` singletons, then `k-1` blocks of
    /// size `ℓ`.
    pub blocks: Vec<Vec<usize>>,
}

/// `ℓ = ⌊n/(k-1)⌋`, `m = n - (k-1)ℓ`.
pub fn block_layout(n: usize, k: usize) -> Result<BlockLayout> {
    if k < 2 || n <= k - 1 {
        return Err(Error::InvalidInput(format!("block systems need k >= 2 and n > k-1 (n = {n}, k = {k})")));
    }
    let ell = n / (k - 1);
    let m = n - (k - 1) * ell;
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|j| vec![j]).collect();
    for b in 0..k - 1 {
        blocks.push((m + b * ell..m + (b + 1) * ell).collect());
    }
    Ok(BlockLayout { n, k, ell, m, blocks })
}

/// The base system in `ℓ` variables: `G_ε` for `ℓ >= 2`, and
/// `(x-1)(x-ε)` for `ℓ = 1`.
pub fn block_base<K: Ring>(ell: usize, eps: &K) -> Result<SparseSystem<K>> {
    if ell >= 2 {
        return gen_g_eps(ell, eps);
    }
    let one = eps.one_like();
    let f = SparsePoly::new(
        1,
        vec![(vec![2], one.clone()), (vec![1], one.plus(eps).negate()), (vec![0], eps.clone())],
    )?;
    SparseSystem::new(1, vec![f])
}

fn embed<K: Ring>(f: &SparsePoly<K>, n: usize, vars: &[usize]) -> Result<SparsePoly<K>> {
    let terms = f
        .terms
        .iter()
        .map(|(a, c)| {
            let mut e: Point = vec![0; n];
            for (&v, &x) in vars.iter().zip(a) {
                e[v] = x;
            }
            (e, c.clone())
        })
        .collect();
    SparsePoly::new(n, terms)
}

pub fn gen_block_system<K: Ring>(n: usize, k: usize, eps: &K) -> Result<(SparseSystem<K>, BlockLayout)> {
    let layout = block_layout(n, k)?;
    let base = block_base(layout.ell, eps)?;
    let one = eps.one_like();
    let mut polys = Vec::with_capacity(n);
    for j in 0..layout.m {
        let mut e = vec![0; n];
        e[j] = 1;
        polys.push(SparsePoly::new(n, vec![(e, one.clone()), (vec![0; n], one.negate())])?);
    }
    for vars in &layout.blocks[layout.m..] {
        for f in &base.polys {
            polys.push(embed(f, n, vars)?);
        }
    }
    Ok((SparseSystem::new(n, polys)?, layout))
}

/// Connected components of the "shares a variable" relation, each as
/// (variables, polynomial indices), ordered by smallest variable.
pub fn decouple<K: Ring>(sys: &SparseSystem<K>) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let n = sys.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut first_var = Vec::with_capacity(sys.polys.len());
    for f in &sys.polys {
        let vars: Vec<usize> = (0..n).filter(|&v| f.terms.iter().any(|(a, _)| a[v] != 0)).collect();
        let Some(&v0) = vars.first() else {
            return Err(Error::InvalidInput("constant polynomial in system".into()));
        };
        for &v in &vars[1..] {
            let (a, b) = (find(&mut parent, v0), find(&mut parent, v));
            parent[a] = b;
        }
        first_var.push(v0);
    }
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_of[r] == usize::MAX {
            root_of[r] = comps.len();
            comps.push((Vec::new(), Vec::new()));
        }
        comps[root_of[r]].0.push(v);
    }
    for (i, &v) in first_var.iter().enumerate() {
        let r = find(&mut parent, v);
        comps[root_of[r]].1.push(i);
    }
    Ok(comps)
}

fn restrict<K: Ring>(sys: &SparseSystem<K>, vars: &[usize], polys: &[usize]) -> Result<SparseSystem<K>> {
    if vars.len() != polys.len() {
        return Err(Error::InvalidInput(format!(
            "block on variables {vars:?} has {} equations",
            polys.len()
        )));
    }
    let fs = polys
        .iter()
        .map(|&i| {
            let f = &sys.polys[i];
            SparsePoly::new(
                vars.len(),
                f.terms
                    .iter()
                    .map(|(a, c)| (vars.iter().map(|&v| a[v]).collect(), c.clone()))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SparseSystem::new(vars.len(), fs)
}

fn univariate<K: Ring>(f: &SparsePoly<K>) -> Result<UniPoly<K>> {
    let deg = f.terms.iter().map(|(a, _)| a[0]).max().unwrap_or(0);
    if f.terms.iter().any(|(a, _)| a[0] < 0) {
        return Err(Error::Unsupported("negative exponents in a univariate block".into()));
    }
    let zero = f.terms[0].1.zero_like();
    let mut c = vec![zero; deg as usize + 1];
    for (a, x) in &f.terms {
        c[a[0] as usize] = x.clone();
    }
    Ok(UniPoly::new(c))
}

fn count_block_real(sub: &SparseSystem<Rational>) -> Result<usize> {
    if sub.n == 1 {
        let f = univariate(&sub.polys[0])?;
        if f.squarefree_part()?.degree() != f.degree() {
            return Err(Error::Unsupported("univariate block with a repeated root".into()));
        }
        return Ok(SturmSequence::new(&f)?.count(Some(&Rational::zero()), None));
    }
    let (roots, _) = certify_circuit_real(sub)?;
    Ok(roots.iter().filter(|r| r.all_phase_one && r.residual_ok).count())
}

fn count_block_local<K: LocalField>(sub: &SparseSystem<K>) -> Result<usize> {
    if sub.n == 1 {
        let f = univariate(&sub.polys[0])?;
        return Ok(local_roots(&f, PhaseFilter::Only(1))?
            .iter()
            .filter(|r| r.derivative_valuation < i64::MAX)
            .count());
    }
    let roots = certify_circuit_local(sub)?;
    Ok(roots.iter().filter(|r| r.all_phase_one && r.residual_ok).count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    pub variables: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub layout: BlockLayout,
    pub field: FieldSpec,
    pub eps: String,
    pub support_size: usize,
    pub support_bound: usize,
    /// `⌊(n+k-1)/(k-1)⌋^{k-1}`.
    pub target: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<u64>,
    pub status: Status,
    pub blocks: Vec<BlockCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub notes: Vec<String>,
}

fn count_system<K: Ring>(
    sys: &SparseSystem<K>,
    count: impl Fn(&SparseSystem<K>) -> Result<usize>,
) -> Result<Vec<BlockCount>> {
    decouple(sys)?
        .into_iter()
        .map(|(vars, polys)| {
            let sub = restrict(sys, &vars, &polys)?;
            Ok(BlockCount {
                count: count(&sub)?,
                variables: vars,
            })
        })
        .collect()
}

/// Builds the block system and certifies its phase-1 root count block by
/// block (the blocks share no variables, so roots are tuples of block roots).
pub fn certify_block_system(
    n: usize,
    k: usize,
    field: FieldSpec,
    eps: &str,
    policy: PrecisionPolicy,
) -> Result<BlockReport> {
    field.validate()?;
    let layout = block_layout(n, k)?;
    let target = ((n + k - 1) / (k - 1)) as u64;
    let target = target.pow(k as u32 - 1);
    let mut precision = None;
    let outcome: Result<(usize, Vec<BlockCount>)> = match field.field {
        FieldKind::R => {
            let FieldElement::Real(e) = field.parse_element(eps)? else { unreachable!() };
            if !e.is_positive() {
                return Err(Error::InvalidInput("eps must be positive (phase 1)".into()));
            }
            let (sys, _) = gen_block_system(n, k, &e)?;
            Ok((sys.union_support().len(), count_system(&sys, count_block_real)?))
        }
        _ => {
            let initial = field.precision.unwrap_or(policy.initial);
            let policy = PrecisionPolicy {
                initial,
                ceiling: policy.ceiling.max(initial),
            };
            policy.run(|prec| {
                precision = Some(prec);
                let spec = FieldSpec { precision: Some(prec), ..field };
                match spec.parse_element(eps)? {
                    FieldElement::PAdic(e) => {
                        check_local_eps(&e)?;
                        let (sys, _) = gen_block_system(n, k, &e)?;
                        Ok((sys.union_support().len(), count_system(&sys, count_block_local)?))
                    }
                    FieldElement::Series(e) => {
                        check_local_eps(&e)?;
                        let (sys, _) = gen_block_system(n, k, &e)?;
                        Ok((sys.union_support().len(), count_system(&sys, count_block_local)?))
                    }
                    FieldElement::Real(_) => unreachable!(),
                }
            })
        }
    };
    let support_bound = n + k;
    match outcome {
        Ok((support_size, blocks)) => {
            let layout_ok = blocks.iter().map(|b| &b.variables).eq(layout.blocks.iter());
            let total: u64 = blocks.iter().map(|b| b.count as u64).product();
            let ok = layout_ok && total == target && support_size <= support_bound;
            let mut notes = Vec::new();
            if !layout_ok {
                notes.push("variable blocks differ from the construction".into());
            }
            Ok(BlockReport {
                layout,
                field,
                eps: eps.to_string(),
                support_size,
                support_bound,
                target,
                certified: Some(total),
                status: if ok { Status::Certified } else { Status::Refuted },
                blocks,
                precision,
                notes,
            })
        }
        Err(Error::Undecided { reason, .. }) | Err(Error::Precision(reason)) => Ok(BlockReport {
            layout,
            field,
            eps: eps.to_string(),
            support_size: 0,
            support_bound,
            target,
            certified: None,
            status: Status::Undecided,
            blocks: Vec::new(),
            precision,
            notes: vec![reason],
        }),
        Err(e) => Err(e),
    }
}
