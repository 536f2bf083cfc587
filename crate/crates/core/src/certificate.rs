//! Effectivity certificates for the boundary class `η - λ f`.
//!
//! Given stabilized data `(p, δ, HN type of (F^δ)^*E)` and numerical data for
//! a cover `Φ : Y → X` over which `(F^δ)^*E` pulls back to `⊕ ℒ^{a_i}`, the
//! certificate records the top-of-filtration selection of `r` summands, the
//! degree of their tensor product `L̃`, and three exact checks:
//!
//! * `L̃` is a summand of `⋀^r ℰ` of maximal degree, so `O_Y ⊂ ⋀^r ℰ ⊗ L̃^*`;
//! * `deg L̃ = λ · p^δ · deg Φ`;
//! * pulling `η - λ f` back along `Gr_r(ℰ) → Gr_r(E)` gives `η - deg(L̃) f`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bundle::{lambda_strong, SplitBundle, StrongHnData};
use crate::cone::{pullback_class, NsClass};
use crate::document::{json_int, json_int_vec};
use crate::error::{check_range, Error, Result};
use crate::oracle::{max_subset_sum, verify_theorem_split, OracleReport};
use crate::rational::Rational;

/// Numerical stand-in for a splitting cover `Φ : Y → X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverModel {
    cover_degree: BigInt,
    l_degree: BigInt,
    exponents: SplitBundle,
}

impl CoverModel {
    pub fn new(cover_degree: BigInt, l_degree: BigInt, exponents: SplitBundle) -> Result<Self> {
        if !cover_degree.is_positive() {
            return Err(Error::validation(
                "cover_degree",
                format!("the cover must have positive degree, got {cover_degree}"),
            ));
        }
        Ok(CoverModel {
            cover_degree,
            l_degree,
            exponents,
        })
    }

    /// `deg Φ`.
    pub fn cover_degree(&self) -> &BigInt {
        &self.cover_degree
    }

    /// `deg ℒ` on `Y`.
    pub fn l_degree(&self) -> &BigInt {
        &self.l_degree
    }

    pub fn exponents(&self) -> &SplitBundle {
        &self.exponents
    }

    /// Degrees `deg ℒ · a_i` of the line-bundle summands of `ℰ`.
    pub fn summand_degrees(&self) -> Vec<BigInt> {
        self.exponents
            .exponents()
            .iter()
            .map(|a| a * &self.l_degree)
            .collect()
    }

    /// Checks that the summands regroup into the given filtration and returns
    /// the common exponent of each block.
    ///
    /// Summands are ordered by degree, descending. Block `i` must then consist
    /// of `rank_i` equal exponents `a` with `deg ℒ · a = deg Φ · μ_i`.
    pub fn block_exponents(&self, d: &StrongHnData) -> Result<Vec<BigInt>> {
        let n = d.hn().total_rank();
        if self.exponents.rank() != n {
            return Err(Error::validation(
                "exponents",
                format!(
                    "the cover splits a bundle of rank {}, but the filtration has rank {n}",
                    self.exponents.rank()
                ),
            ));
        }
        let mut ordered = self.exponents.exponents().to_vec();
        let e = &self.l_degree;
        ordered.sort_by(|a, b| (b * e).cmp(&(a * e)).then_with(|| b.cmp(a)));

        let mut out = Vec::with_capacity(d.hn().len());
        let mut start = 0;
        for (i, block) in d.hn().blocks().iter().enumerate() {
            let chunk = &ordered[start..start + block.rank()];
            start += block.rank();
            let a = &chunk[0];
            if let Some(other) = chunk.iter().find(|x| *x != a) {
                return Err(Error::validation(
                    format!("exponents (block {})", i + 1),
                    format!(
                        "block {} {block} needs {} equal exponents, found {a} and {other}",
                        i + 1,
                        block.rank()
                    ),
                ));
            }
            let lhs = Rational::from(e * a);
            let rhs = Rational::from(&self.cover_degree) * block.slope();
            if lhs != rhs {
                return Err(Error::validation(
                    format!("exponents (block {})", i + 1),
                    format!(
                        "block {} {block}: l_degree * exponent = {lhs} but cover_degree * slope = {rhs}",
                        i + 1
                    ),
                ));
            }
            out.push(a.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateChecks {
    pub summand_ok: bool,
    pub degree_identity_ok: bool,
    pub pullback_identity_ok: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.summand_ok && self.degree_identity_ok && self.pullback_identity_ok
    }
}

/// Replayable witness that `η - λ f` is effective on `Gr_r(E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectivityCertificate {
    pub r: usize,
    /// 1-based block index with `rank(E_{δ,ℓ-1}) < r <= rank(E_{δ,ℓ})`.
    pub ell: usize,
    /// `rank(E_{δ,ℓ-1})`.
    pub n: usize,
    #[serde(with = "json_int_vec")]
    pub selected_exponents: Vec<BigInt>,
    #[serde(with = "json_int")]
    pub tilde_l_degree: BigInt,
    /// `p^δ · deg Φ`.
    #[serde(with = "json_int")]
    pub total_map_degree: BigInt,
    pub checks: CertificateChecks,
}

/// Builds the certificate for `1 <= r <= N - 1`.
pub fn build_certificate(
    d: &StrongHnData,
    cm: &CoverModel,
    r: usize,
) -> Result<EffectivityCertificate> {
    let total_rank = d.hn().total_rank();
    check_range("r", r, 1, total_rank - 1)?;
    let block_exps = cm.block_exponents(d)?;

    let ell = d.hn().block_index(r)?;
    let n = d.hn().partial_sums()[ell - 1].0;

    // σ: whole blocks above ℓ, then r - n summands from block ℓ
    let mut selected = Vec::with_capacity(r);
    for (block, a) in d.hn().blocks()[..ell - 1].iter().zip(&block_exps) {
        selected.extend(std::iter::repeat_n(a.clone(), block.rank()));
    }
    selected.extend(std::iter::repeat_n(block_exps[ell - 1].clone(), r - n));

    let tilde_l_degree = cm.l_degree() * selected.iter().sum::<BigInt>();
    let total_map_degree = d.frobenius_degree() * cm.cover_degree();
    let lambda = lambda_strong(d, r)?;

    let summand_ok = selected.len() == r
        && is_submultiset(&selected, cm.exponents().exponents())
        && Rational::from(&tilde_l_degree) == max_subset_sum(&cm.summand_degrees(), r)?;
    let degree_identity_ok =
        Rational::from(&tilde_l_degree) == &lambda * &Rational::from(&total_map_degree);
    let pullback_identity_ok = pullback_class(&NsClass::boundary(&lambda), &total_map_degree)
        == NsClass::boundary(&Rational::from(&tilde_l_degree));

    Ok(EffectivityCertificate {
        r,
        ell,
        n,
        selected_exponents: selected,
        tilde_l_degree,
        total_map_degree,
        checks: CertificateChecks {
            summand_ok,
            degree_identity_ok,
            pullback_identity_ok,
        },
    })
}

/// Rebuilds the certificate from `(d, cm, cert.r)` and compares every field.
pub fn verify_certificate(
    cert: &EffectivityCertificate,
    d: &StrongHnData,
    cm: &CoverModel,
) -> bool {
    match build_certificate(d, cm, cert.r) {
        Ok(expected) => expected == *cert && cert.checks.all(),
        Err(_) => false,
    }
}

/// Result of running the section-counting oracle on the split bundle `ℰ`
/// upstairs, treating `Y` as genus 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub report: OracleReport,
    /// Oracle verdict holds and its λ equals `deg L̃`.
    pub agrees: bool,
}

pub fn cross_check(cm: &CoverModel, cert: &EffectivityCertificate) -> Result<CrossCheck> {
    let upstairs = SplitBundle::new(cm.summand_degrees())?;
    let report = verify_theorem_split(&upstairs, cert.r)?;
    let agrees = report.verdict && report.lambda_oracle == Rational::from(&cert.tilde_l_degree);
    Ok(CrossCheck { report, agrees })
}

fn is_submultiset(sub: &[BigInt], of: &[BigInt]) -> bool {
    let mut counts: HashMap<&BigInt, isize> = HashMap::new();
    for x in of {
        *counts.entry(x).or_default() += 1;
    }
    sub.iter().all(|x| {
        let c = counts.entry(x).or_default();
        *c -= 1;
        *c >= 0
    })
}
