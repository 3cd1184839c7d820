//! The lifted triangles `T̂_1, …, T̂_n` and a checkable certificate that
//! their lifted Minkowski sum has exactly `n+1` mixed lower facets.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::system::circuit_column;
use super::verify::Status;
use crate::error::Result;
use crate::polyhedra::hull::facet_mixed_volume;
use crate::polyhedra::{lower_facets, LiftedSupport, Support};
use crate::numeric::Rational;

/// `T̂_i` with vertices in the order `(α_i, β_i, γ_i)`.
pub fn lemma_triangles(n: usize) -> Result<Vec<LiftedSupport>> {
    (1..=n)
        .map(|i| {
            let pts = vec![circuit_column(n, 1), circuit_column(n, 2), circuit_column(n, i + 2)];
            let lifts: [i64; 3] = if i == 1 { [1, 0, 0] } else { [0, 2 * i as i64 - 3, 0] };
            LiftedSupport::new(
                Support::new(n, pts)?,
                lifts.iter().map(|&x| Rational::from_integer(x.into())).collect(),
            )
        })
        .collect()
}

/// `v_j = e_{n+1} + e_1 - Σ_{i<=j} (j+1-i) e_i`, for `0 <= j <= n`.
pub fn expected_normal(n: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + 1];
    v[0] = 1;
    v[n] = 1;
    for i in 1..=j {
        v[i - 1] -= (j + 1 - i) as i64;
    }
    v
}

/// Indices of `Ê_{i,1} = {β_i, γ_i}` for `i <= j`, `Ê_{i,0} = {α_i, γ_i}` otherwise.
pub fn expected_faces(n: usize, j: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|i| if i <= j { vec![1, 2] } else { vec![0, 2] }).collect()
}

/// Closed form of `(v_j·α̂_i, v_j·β̂_i, v_j·γ̂_i)`.
pub fn expected_inner_products(j: usize, i: usize) -> [i64; 3] {
    let (i, j) = (i as i64, j as i64);
    if i == 1 {
        return if j == 0 { [1, 2, 1] } else { [1, 2 - 2 * j, 2 - 2 * j] };
    }
    let beta = if j == 0 { 2 * i - 1 } else { 2 * (i - j) - 1 };
    let gamma = if i <= j - 1 {
        2 * (i - j) - 1
    } else if i == j {
        -1
    } else {
        0
    };
    [0, beta, gamma]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaFacet {
    /// `j` with normal `v_j`, when one matches.
    pub j: Option<usize>,
    pub normal: Vec<String>,
    pub faces: Vec<Vec<usize>>,
    pub volume: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCertificate {
    pub n: usize,
    pub status: Status,
    pub mixed_facets: usize,
    pub mixed_volume: String,
    pub facets: Vec<LemmaFacet>,
    pub checks: Vec<LemmaCheck>,
    /// `inner_products[j][i-1]` is `(v_j·α̂_i, v_j·β̂_i, v_j·γ̂_i)`.
    pub inner_products: Vec<Vec<[i64; 3]>>,
    pub failed: Vec<String>,
}

fn dot(v: &[i64], p: &[i64], lift: i64) -> i64 {
    v[..p.len()].iter().zip(p).map(|(a, b)| a * b).sum::<i64>() + v[p.len()] * lift
}

/// Runs the lower-facet enumeration on `T̂_1 + ⋯ + T̂_n` and checks
/// (a) `n+1` mixed facets, (b) facet `j` is `P̂_j`, (c) unit volumes,
/// (d) normals `v_j`, (e) mixed volume `n+1`, plus the inner-product table.
pub fn lemma_tri_certificate(n: usize) -> Result<LemmaCertificate> {
    if n < 2 {
        return Err(crate::Error::InvalidInput("n must be at least 2".into()));
    }
    let tri = lemma_triangles(n)?;
    let supports: Vec<Support> = tri.iter().map(|l| l.support.clone()).collect();
    let all = lower_facets(&tri)?;
    let every_facet_mixed = all.iter().all(|f| f.is_mixed);
    let mixed: Vec<_> = all.iter().filter(|f| f.dims.iter().all(|&d| d == 1)).collect();

    let normals: Vec<Vec<BigInt>> = (0..=n)
        .map(|j| expected_normal(n, j).into_iter().map(BigInt::from).collect())
        .collect();
    let mut facets = Vec::new();
    let mut seen = vec![false; n + 1];
    let (mut faces_ok, mut volumes_ok, mut normals_ok) = (true, true, true);
    let mut total = BigInt::from(0);
    for f in &mixed {
        let vol = facet_mixed_volume(&supports, f);
        total += &vol;
        let j = normals.iter().position(|v| v == &f.normal);
        match j {
            Some(j) if !seen[j] => {
                seen[j] = true;
                faces_ok &= f.faces == expected_faces(n, j);
            }
            _ => normals_ok = false,
        }
        volumes_ok &= vol.is_one();
        facets.push(LemmaFacet {
            j,
            normal: f.normal.iter().map(|x| x.to_string()).collect(),
            faces: f.faces.clone(),
            volume: vol.to_string(),
        });
    }
    facets.sort_by_key(|f| f.j);
    normals_ok &= seen.iter().all(|&s| s);

    let pts: Vec<Vec<(Vec<i64>, i64)>> = tri
        .iter()
        .map(|l| {
            l.support
                .points()
                .iter()
                .zip(&l.lifting)
                .map(|(p, h)| (p.clone(), h.to_integer().try_into().expect("small lift")))
                .collect()
        })
        .collect();
    let inner_products: Vec<Vec<[i64; 3]>> = (0..=n)
        .map(|j| {
            let v = expected_normal(n, j);
            pts.iter().map(|t| [0, 1, 2].map(|k| dot(&v, &t[k].0, t[k].1))).collect()
        })
        .collect();
    let table_ok = inner_products
        .iter()
        .enumerate()
        .all(|(j, row)| row.iter().enumerate().all(|(i, x)| *x == expected_inner_products(j, i + 1)));
    // the minimizing pair of every triangle under v_j is the expected edge
    let minima_ok = inner_products.iter().enumerate().all(|(j, row)| {
        row.iter().zip(expected_faces(n, j)).all(|(x, face)| {
            let m = *x.iter().min().unwrap();
            let arg: Vec<usize> = (0..3).filter(|&k| x[k] == m).collect();
            arg == face
        })
    });

    let checks = vec![
        ("a: exactly n+1 mixed lower facets", mixed.len() == n + 1 && every_facet_mixed),
        ("b: facet j is P_j", faces_ok && normals_ok),
        ("c: every mixed cell has volume 1", volumes_ok),
        ("d: primitive normals are v_0..v_n", normals_ok),
        ("e: mixed volume n+1", total == BigInt::from(n + 1)),
        ("inner-product table matches the closed form", table_ok),
        ("v_j minimizes on the expected edges", minima_ok),
    ];
    let failed: Vec<String> = checks.iter().filter(|c| !c.1).map(|c| c.0.to_string()).collect();
    Ok(LemmaCertificate {
        n,
        status: if failed.is_empty() { Status::Certified } else { Status::Refuted },
        mixed_facets: mixed.len(),
        mixed_volume: total.to_string(),
        facets,
        checks: checks
            .into_iter()
            .map(|(name, passed)| LemmaCheck { name: name.into(), passed })
            .collect(),
        inner_products,
        failed,
    })
}
