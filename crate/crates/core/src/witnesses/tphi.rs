//! Profiles `t_φ(0^n)` of formulas over the unary alphabet `(0)`, whose
//! i-th bit records whether `φ` holds with the position variable at `i`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bounded::min_blocks;
use crate::alphabet::Alphabet;
use crate::error::Error;
use crate::formula::Formula;
use crate::semantics::{Assignment, Compiled};

pub fn unary_alphabet() -> Alphabet {
    Alphabet::parse("(0)").expect("valid alphabet")
}

fn check_signature(phi: &Formula) -> Result<(), Error> {
    let mut bad = None;
    phi.visit(&mut |f| match f {
        Formula::Lindstrom(_) | Formula::Bit(..) => bad = Some(format!("{f}")),
        Formula::Letter(c, _) if *c != '0' => bad = Some(format!("{f}")),
        _ => {}
    });
    match bad {
        Some(atom) => Err(Error::Unsupported(format!("`{atom}` is outside order, addition and constants"))),
        None => Ok(()),
    }
}

/// A formula in the position variable `x` and parameters, ready to profile.
#[derive(Debug, Clone)]
pub struct Profiler {
    compiled: Compiled,
    x: Option<usize>,
    params: Vec<Option<usize>>,
}

impl Profiler {
    pub fn new(phi: &Formula, x: &str, params: &[&str]) -> Result<Self, Error> {
        check_signature(phi)?;
        let compiled = Compiled::new(phi, &unary_alphabet())?;
        let extra = phi.free_vars().into_iter().find(|v| v != x && !params.contains(&v.as_str()));
        if let Some(v) = extra {
            return Err(Error::UnassignedVariable(v));
        }
        let x = compiled.slot(x);
        let params = params.iter().map(|p| compiled.slot(p)).collect();
        Ok(Profiler { compiled, x, params })
    }

    /// `t_φ(0^n)` with the parameters at `ybar` (in declaration order).
    pub fn profile(&self, n: usize, ybar: &[usize]) -> Vec<bool> {
        let w = vec![0; n];
        let mut values = vec![0; self.compiled.slot_count()];
        for (s, &y) in self.params.iter().zip(ybar) {
            if let Some(s) = *s {
                values[s] = y;
            }
        }
        (1..=n)
            .map(|i| {
                if let Some(x) = self.x {
                    values[x] = i;
                }
                self.compiled.holds_raw(&w, &mut values)
            })
            .collect()
    }

    /// Every parameter tuple over `[1, n]` in lexical order.
    pub fn profiles(&self, n: usize) -> impl Iterator<Item = Vec<bool>> + '_ {
        let k = self.params.len();
        let total = n.pow(k as u32);
        (0..total).map(move |mut code| {
            let mut ybar = vec![0; k];
            for slot in ybar.iter_mut().rev() {
                *slot = code % n + 1;
                code /= n;
            }
            self.profile(n, &ybar)
        })
    }
}

/// `t_φ(0^n)` for one assignment of the parameters.
pub fn t_phi(phi: &Formula, x: &str, ybar: &Assignment, n: usize) -> Result<Vec<bool>, Error> {
    let names: Vec<&str> = ybar.keys().map(String::as_str).collect();
    let values: Vec<usize> = ybar.values().copied().collect();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if let Some((name, &pos)) = ybar.iter().find(|(_, &p)| p == 0 || p > n) {
        return Err(Error::PositionOutOfRange { var: name.clone(), pos, len: n });
    }
    Ok(Profiler::new(phi, x, &names)?.profile(n, &values))
}

/// For each unit length `m` in `1..=m_cap`, the fewest blocks that cover
/// every profile with `n ≤ n_max` and every parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundSearch {
    pub n_max: usize,
    /// `blocks[m - 1]` is the uniform `l` needed with units of length `m`.
    pub blocks: Vec<usize>,
}

impl BoundSearch {
    /// Smallest `m` whose uniform `l` fits under `l_cap`, with that `l`.
    pub fn minimal(&self, l_cap: usize) -> Option<(usize, usize)> {
        self.blocks.iter().enumerate().find(|(_, &l)| l <= l_cap).map(|(i, &l)| (l, i + 1))
    }
}

pub fn search_bounds(profiler: &Profiler, n_max: usize, m_cap: usize) -> BoundSearch {
    let mut blocks = vec![0; m_cap];
    for n in 1..=n_max {
        for t in profiler.profiles(n) {
            for (i, need) in blocks.iter_mut().enumerate() {
                let (count, _) = min_blocks(&t, i + 1).expect("m >= 1");
                *need = (*need).max(count);
            }
        }
    }
    BoundSearch { n_max, blocks }
}

/// Every profile for `n ≤ n_max` and every parameter tuple is `(l, m)`-bounded.
pub fn check_tphi_bounded(
    phi: &Formula,
    x: &str,
    params: &[&str],
    n_max: usize,
    l: usize,
    m: usize,
) -> Result<bool, Error> {
    let profiler = Profiler::new(phi, x, params)?;
    for n in 1..=n_max {
        for t in profiler.profiles(n) {
            match min_blocks(&t, m) {
                Some((count, _)) if count <= l => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::semantics::assignment;
    use crate::witnesses::bounded::render_bits;

    fn f(text: &str) -> Formula {
        parse_formula(text, &unary_alphabet()).unwrap()
    }

    #[test]
    fn even_positions() {
        let phi = f("Ez. z + z = x");
        assert_eq!(render_bits(&t_phi(&phi, "x", &Assignment::new(), 6).unwrap()), "010101");
        assert!(check_tphi_bounded(&phi, "x", &[], 20, 2, 2).unwrap());
    }

    #[test]
    fn first_position() {
        let phi = f("x = min");
        assert_eq!(render_bits(&t_phi(&phi, "x", &Assignment::new(), 4).unwrap()), "1000");
        assert!(check_tphi_bounded(&phi, "x", &[], 20, 2, 1).unwrap());
    }

    #[test]
    fn linear_equation_is_three_blocks() {
        let phi = f("x + y = z");
        let p = Profiler::new(&phi, "x", &["y", "z"]).unwrap();
        let t = t_phi(&phi, "x", &assignment([("y", 2), ("z", 5)]), 7).unwrap();
        assert_eq!(render_bits(&t), "0010000");
        assert_eq!(search_bounds(&p, 10, 1).blocks, [3]);
    }

    #[test]
    fn rejects_letters_and_bit() {
        assert!(matches!(Profiler::new(&f("BIT(x, max)"), "x", &[]), Err(Error::Unsupported(_))));
        assert!(matches!(Profiler::new(&f("x < y"), "x", &[]), Err(Error::UnassignedVariable(_))));
    }
}
