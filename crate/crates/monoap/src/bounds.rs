//! Exact verification of the counting identities behind the lower bounds,
//! the closed-form 3-AP count for prime moduli, and the lower-bound
//! reporter.

use crate::apcount::{pair_intersection, u_vector, ColorClass, ColorProfile, PairMode, color_profile};
use crate::coloring::Coloring;
use crate::error::Error;
use crate::ratio::Ratio;

/// One exact equality inside an identity report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: String,
    pub left: i128,
    pub right: i128,
}

/// Result of checking a counting identity: every listed pair must agree
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub checks: Vec<IdentityCheck>,
    pub holds: bool,
}

impl IdentityReport {
    fn from_checks(name: &'static str, checks: Vec<IdentityCheck>) -> IdentityReport {
        let holds = checks.iter().all(|c| c.left == c.right);
        IdentityReport { name, checks, holds }
    }
}

fn pair_sum_both_colors(c: &Coloring, k: usize) -> Result<i128, Error> {
    let mut sum = 0i128;
    for i in 1..=k {
        for j in i + 1..=k {
            sum += pair_intersection(c, k, i, j, ColorClass::Red, PairMode::BruteForce)? as i128;
            sum += pair_intersection(c, k, i, j, ColorClass::Blue, PairMode::BruteForce)? as i128;
        }
    }
    Ok(sum)
}

/// Checks `4 u_0 + u_1 + u_3 + 4 u_4 = -2 n^2 + sum over pairs of
/// (|A_i ∩ A_j| + |B_i ∩ B_j|)`, with both sides enumerated exactly. The
/// identity holds for every cyclic coloring.
pub fn verify_mix_identity(c: &Coloring) -> Result<IdentityReport, Error> {
    let n = c.n() as i128;
    let u = u_vector(c, 4)?;
    let left = 4 * u[0] as i128 + u[1] as i128 + u[3] as i128 + 4 * u[4] as i128;
    let right = -2 * n * n + pair_sum_both_colors(c, 4)?;
    Ok(IdentityReport::from_checks(
        "mix-identity",
        vec![IdentityCheck {
            label: "4u0+u1+u3+4u4".into(),
            left,
            right,
        }],
    ))
}

fn split_mod4(profile: &ColorProfile) -> (i128, i128) {
    let r = &profile.residue_counts;
    ((r[0] + r[2]) as i128, (r[1] + r[3]) as i128)
}

/// For `n = 2 mod 4`, checks the closed forms
/// `|A_1 ∩ A_3| = |A_2 ∩ A_4| = 2 (a_0+a_2)^2 + 2 (a_1+a_3)^2` (residue
/// counts mod 4) against brute-force pair intersections, for both colors.
pub fn verify_case2_formula(c: &Coloring) -> Result<IdentityReport, Error> {
    let n = c.n();
    if n % 4 != 2 {
        return Err(Error::WrongResidue {
            n,
            required: "n = 2 mod 4",
        });
    }
    let mut checks = Vec::new();
    for class in [ColorClass::Red, ColorClass::Blue] {
        let profile = color_profile(c, 4, class)?;
        let (even, odd) = split_mod4(&profile);
        let formula = 2 * even * even + 2 * odd * odd;
        for (i, j) in [(1usize, 3usize), (2, 4)] {
            let brute = pair_intersection(c, 4, i, j, class, PairMode::BruteForce)? as i128;
            checks.push(IdentityCheck {
                label: format!("{class:?} ({i},{j})"),
                left: brute,
                right: formula,
            });
        }
    }
    Ok(IdentityReport::from_checks("pair-intersections-mod4", checks))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^2 - 3 red p + 3 red^2`: the monochromatic 3-AP count of any coloring
/// of `Z_p` (p prime) with the given number of red elements. The count
/// depends only on the class sizes.
pub fn m3_closed_form(p: u64, red_count: u64) -> Result<u64, Error> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    assert!(red_count <= p, "red count cannot exceed p");
    let p = p as i128;
    let r = red_count as i128;
    Ok((p * p - 3 * r * p + 3 * r * r) as u64)
}

/// A proved lower bound on the minimum monochromatic k-AP density, with a
/// note naming the governing argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Ratio,
    pub note: String,
}

/// Best proved density lower bound for `m_k(Z_n)`: `1/4` for 3-APs; for
/// 4-APs, `7/96` when 4 does not divide n and `2/33` when it does.
pub fn lower_bound_for(n: u64, k: usize) -> Result<LowerBound, Error> {
    match k {
        3 => Ok(LowerBound {
            value: Ratio::new(1, 4),
            note: "pair-intersection convexity; exact asymptotic minimum".into(),
        }),
        4 => {
            if n % 4 != 0 {
                Ok(LowerBound {
                    value: Ratio::new(7, 96),
                    note: format!(
                        "frame-pair excess bound ({} inversion of 4d mod {n})",
                        if n % 4 == 2 { "two-fold" } else { "unique" }
                    ),
                })
            } else {
                Ok(LowerBound {
                    value: Ratio::new(2, 33),
                    note: "even-colored progression bound for 4 | n".into(),
                })
            }
        }
        other => Err(Error::UnsupportedK(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apcount::{count_mono_cyclic, ApFilter};
    use crate::coloring::Group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_coloring(rng: &mut ChaCha8Rng, n: usize) -> Coloring {
        Coloring::from_fn(Group::Cyclic(n), |_| rng.gen_range(0..=1))
    }

    #[test]
    fn mix_identity_on_all_red() {
        let c = Coloring::from_fn(Group::Cyclic(9), |_| 0);
        let report = verify_mix_identity(&c).unwrap();
        assert!(report.holds);
        // u_4 = n^2, pair sum = 6 n^2: LHS = 4n^2 = -2n^2 + 6n^2.
        assert_eq!(report.checks[0].left, 4 * 81);
    }

    #[test]
    fn mix_identity_on_random_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.gen_range(4..=24);
            let c = random_coloring(&mut rng, n);
            assert!(verify_mix_identity(&c).unwrap().holds, "n={n} c={c}");
        }
    }

    #[test]
    fn case2_formula_on_random_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for &n in &[6usize, 10, 14, 18, 22] {
            for _ in 0..10 {
                let c = random_coloring(&mut rng, n);
                assert!(verify_case2_formula(&c).unwrap().holds, "n={n} c={c}");
            }
        }
        let all_red = Coloring::from_fn(Group::Cyclic(6), |_| 0);
        let report = verify_case2_formula(&all_red).unwrap();
        assert!(report.holds);
        assert_eq!(report.checks[0].left, 36);
        assert!(verify_case2_formula(&random_coloring(&mut rng, 8)).is_err());
    }

    #[test]
    fn m3_closed_form_examples_and_sweep() {
        assert_eq!(m3_closed_form(7, 0).unwrap(), 49);
        assert_eq!(m3_closed_form(7, 3).unwrap(), 13);
        assert_eq!(m3_closed_form(11, 5).unwrap(), 31);
        assert!(m3_closed_form(9, 2).is_err());

        // Every coloring of Z_7 with 3 red elements attains exactly 13.
        for mask in 0u32..(1 << 7) {
            if mask.count_ones() != 3 {
                continue;
            }
            let c = Coloring::from_fn(Group::Cyclic(7), |v| {
                if (mask >> v) & 1 == 1 {
                    0
                } else {
                    1
                }
            });
            assert_eq!(count_mono_cyclic(&c, 3, ApFilter::All).unwrap(), 13);
        }
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_for(21, 4).unwrap().value, Ratio::new(7, 96));
        assert_eq!(lower_bound_for(24, 4).unwrap().value, Ratio::new(2, 33));
        assert_eq!(lower_bound_for(101, 3).unwrap().value, Ratio::new(1, 4));
        assert!(lower_bound_for(10, 5).is_err());
    }

    #[test]
    fn formula_mode_dominates_square_of_class_size() {
        // r * sum of squared residue counts >= (class size)^2 / ... via
        // Cauchy-Schwarz: r * sum rho_l^2 >= (sum rho_l)^2.
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..40 {
            let n = rng.gen_range(2..=40);
            let c = random_coloring(&mut rng, n);
            for (i, j) in [(1usize, 3usize), (2, 4), (1, 4)] {
                for class in [ColorClass::Red, ColorClass::Blue] {
                    let value =
                        pair_intersection(&c, 4, i, j, class, PairMode::Formula).unwrap();
                    let size = match class {
                        ColorClass::Red => c.red_count(),
                        ColorClass::Blue => c.blue_count(),
                    };
                    assert!(value >= size * size, "n={n} i={i} j={j}");
                }
            }
        }
    }
}
