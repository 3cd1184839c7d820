use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::height::Height;
use super::hull::{extreme_pair, facet_mixed_volume, lower_facets_h, mixed_lower_facets_h, LowerFacet, MixedCell};
use super::support::{LiftedSupport, Support};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, Rational};

/// Seed of the tie-breaking perturbation weights.
pub const PERTURBATION_SEED: u64 = 0x5eed_0f_11f7;

fn split(lifted: &[LiftedSupport]) -> (Vec<Support>, Vec<Vec<Height>>) {
    (
        lifted.iter().map(|l| l.support.clone()).collect(),
        lifted.iter().map(|l| l.heights()).collect(),
    )
}

pub fn lower_facets(lifted: &[LiftedSupport]) -> Result<Vec<LowerFacet>> {
    let (s, h) = split(lifted);
    lower_facets_h(&s, &h)
}

/// Coherent subdivision of `Q_1 + ... + Q_r` induced by the liftings: the
/// projections of the lower facets.
#[derive(Debug, Clone, PartialEq)]
pub struct Subdivision {
    pub lifted: Vec<LiftedSupport>,
    pub cells: Vec<LowerFacet>,
}

impl Subdivision {
    pub fn dim(&self) -> usize {
        self.lifted[0].support.dim()
    }

    pub fn supports(&self) -> Vec<Support> {
        self.lifted.iter().map(|l| l.support.clone()).collect()
    }
}

pub fn induced_subdivision(lifted: &[LiftedSupport]) -> Result<Subdivision> {
    Ok(Subdivision {
        lifted: lifted.to_vec(),
        cells: lower_facets(lifted)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedCheck {
    pub mixed: bool,
    /// A facet whose summand dimensions add up to more than `n`.
    pub witness: Option<LowerFacet>,
}

fn first_unmixed(cells: &[LowerFacet]) -> Option<&LowerFacet> {
    cells.iter().find(|c| !c.is_mixed)
}

pub fn is_mixed_tuple(lifted: &[LiftedSupport]) -> Result<MixedCheck> {
    let cells = lower_facets(lifted)?;
    let witness = first_unmixed(&cells).cloned();
    Ok(MixedCheck {
        mixed: witness.is_none(),
        witness,
    })
}

fn not_mixed(f: &LowerFacet) -> Error {
    Error::NotMixed {
        normal: f.normal.iter().map(|x| x.to_string()).collect(),
        dims: f.dims.clone(),
    }
}

fn cells_from_facets(supports: &[Support], facets: &[LowerFacet]) -> Result<Vec<MixedCell>> {
    if let Some(f) = first_unmixed(facets) {
        return Err(not_mixed(f));
    }
    let n = supports[0].dim();
    if supports.len() != n {
        return Err(Error::Dimension(format!("{} supports in dimension {n}", supports.len())));
    }
    Ok(facets
        .iter()
        .filter(|f| f.dims.iter().all(|&d| d == 1))
        .map(|f| {
            let edges = f
                .faces
                .iter()
                .zip(supports)
                .map(|(face, s)| extreme_pair(s.points(), face))
                .collect();
            MixedCell {
                normal: f.normal.clone(),
                v: f.v.clone(),
                edges,
                faces: f.faces.clone(),
                volume: facet_mixed_volume(supports, f),
            }
        })
        .collect())
}

/// Mixed cells of a subdivision built from a mixed tuple.
pub fn mixed_cells(sub: &Subdivision) -> Result<Vec<MixedCell>> {
    cells_from_facets(&sub.supports(), &sub.cells)
}

/// Lifting values plus `δ·w` with pseudo-random integer weights `w` drawn
/// from a fixed seed, so repeated runs perturb identically.
pub fn perturbed_heights(lifted: &[LiftedSupport], seed: u64) -> Vec<Vec<Height>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    lifted
        .iter()
        .map(|l| {
            l.lifting
                .iter()
                .map(|q| Height::new(q.clone(), Rational::from_integer(rng.gen_range(-1_000_000i64..=1_000_000).into())))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedVolume {
    pub value: BigInt,
    pub cells: Vec<MixedCell>,
    /// True when a symbolic perturbation had to be applied.
    pub perturbed: bool,
}

/// Mixed volume as the sum of mixed-cell volumes. A non-mixed tuple is an
/// error unless `perturb` is set, in which case the liftings receive an
/// infinitesimal seeded perturbation and mixedness is re-checked.
pub fn mixed_volume(lifted: &[LiftedSupport], perturb: bool) -> Result<MixedVolume> {
    let (supports, heights) = split(lifted);
    let facets = lower_facets_h(&supports, &heights)?;
    match first_unmixed(&facets) {
        None => {
            let cells = cells_from_facets(&supports, &facets)?;
            Ok(MixedVolume {
                value: cells.iter().map(|c| c.volume.clone()).sum(),
                cells,
                perturbed: false,
            })
        }
        Some(f) if !perturb => Err(not_mixed(f)),
        Some(_) => {
            for attempt in 0..4u64 {
                let h = perturbed_heights(lifted, PERTURBATION_SEED + attempt);
                let facets = lower_facets_h(&supports, &h)?;
                if first_unmixed(&facets).is_none() {
                    let cells = cells_from_facets(&supports, &facets)?;
                    return Ok(MixedVolume {
                        value: cells.iter().map(|c| c.volume.clone()).sum(),
                        cells,
                        perturbed: true,
                    });
                }
            }
            Err(Error::Undecided {
                precision: 0,
                partial: 0,
                reason: "perturbed liftings stayed non-mixed".into(),
            })
        }
    }
}

/// Mixed volume with default random liftings (any mixed tuple gives the
/// same value).
pub fn mixed_volume_of_supports(supports: &[Support]) -> Result<BigInt> {
    let lifted: Vec<LiftedSupport> = supports.iter().cloned().map(LiftedSupport::flat).collect();
    Ok(mixed_volume(&lifted, true)?.value)
}

/// Mixed cells found by the edge-only search; scales to larger `n` than a
/// full facet enumeration but does not certify mixedness.
pub fn mixed_lower_facets(lifted: &[LiftedSupport]) -> Result<Vec<MixedCell>> {
    let (s, h) = split(lifted);
    mixed_lower_facets_h(&s, &h)
}

pub fn describe_normal(v: &[Height]) -> Vec<String> {
    v.iter()
        .map(|h| {
            if h.perturbation.is_zero() {
                format_rational(&h.value)
            } else {
                format!("{h:?}")
            }
        })
        .collect()
}
