//! Screen-level bookkeeping: the interaction energy and the encoding
//! square between screen configurations and register basis states.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::perm::Permutation;
use crate::qrf::BitString;
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolographicScreen {
    config: BitString,
}

impl HolographicScreen {
    pub fn new(config: BitString) -> Result<Self> {
        if config.width() == 0 {
            return input("a screen needs at least one slot");
        }
        Ok(HolographicScreen { config })
    }

    pub fn slots(&self) -> usize {
        self.config.width()
    }

    pub fn config(&self) -> BitString {
        self.config
    }

    /// Configuration after a dynamics permutation of `{0,1}^N`.
    pub fn evolve(&self, dynamics: &Permutation) -> Result<Self> {
        check_dynamics(self.slots(), dynamics)?;
        Ok(HolographicScreen { config: BitString::new(self.slots(), dynamics.apply(self.config.index() as usize) as u64)? })
    }
}

/// Rational stand-in for ln 2 from below.
pub fn ln2_floor() -> Q {
    q(693, 1000)
}

/// Bound used in strict mode.
pub fn ln2_strict() -> Q {
    q(7, 10)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionSpec {
    beta: Q,
    temperature: Q,
    alphas: Vec<Q>,
}

impl InteractionSpec {
    pub fn new(beta: Q, temperature: Q, alphas: Vec<Q>, strict: bool) -> Result<Self> {
        let bound = if strict { ln2_strict() } else { ln2_floor() };
        if beta < bound {
            return Err(Error::Bound(format!("beta {beta} below {bound}")));
        }
        if !temperature.is_positive() {
            return input("temperature must be positive");
        }
        if alphas.is_empty() {
            return input("at least one weight is needed");
        }
        if alphas.iter().any(|a| a.is_negative() || *a > Q::one()) {
            return input("weights must lie in [0,1]");
        }
        let total: Q = alphas.iter().sum();
        if !total.is_one() {
            return input(format!("weights sum to {total}, not 1"));
        }
        Ok(InteractionSpec { beta, temperature, alphas })
    }

    /// Uniform weights over `n` outcomes.
    pub fn uniform(beta: Q, temperature: Q, n: usize, strict: bool) -> Result<Self> {
        if n == 0 {
            return input("at least one weight is needed");
        }
        Self::new(beta, temperature, vec![q(1, n as i64); n], strict)
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    pub fn temperature(&self) -> &Q {
        &self.temperature
    }

    pub fn alphas(&self) -> &[Q] {
        &self.alphas
    }
}

/// `beta * T * sum(alpha_i * s_i)` with the Boltzmann constant set to 1.
pub fn hab_eigenvalue(spec: &InteractionSpec, outcome: &[i8]) -> Result<Q> {
    if outcome.len() != spec.alphas.len() {
        return input(format!("{} outcomes for {} weights", outcome.len(), spec.alphas.len()));
    }
    let mut sum = Q::zero();
    for (a, &s) in spec.alphas.iter().zip(outcome) {
        match s {
            1 => sum += a,
            -1 => sum -= a,
            _ => return input(format!("outcome {s} is not +1 or -1")),
        }
    }
    Ok(&spec.beta * &spec.temperature * sum)
}

fn check_dynamics(n: usize, dynamics: &Permutation) -> Result<()> {
    if dynamics.len() != 1 << n {
        return input(format!("dynamics acts on {} states, width {n} needs {}", dynamics.len(), 1usize << n));
    }
    Ok(())
}

/// The two vertical maps of the encoding square.
pub struct Encodings<'a> {
    /// String to register basis index.
    pub register: Box<dyn Fn(&BitString) -> usize + 'a>,
    /// String to screen configuration.
    pub screen: Box<dyn Fn(&BitString) -> BitString + 'a>,
}

impl Encodings<'_> {
    pub fn canonical() -> Self {
        Encodings { register: Box::new(|x| x.index() as usize), screen: Box::new(|x| *x) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncodeCheck {
    pub holds: bool,
    /// Encode-after-dynamics and dynamics-after-encode on the register.
    pub register: (usize, usize),
    pub screen: (String, String),
}

/// Bijection on `{0,1}^N` moving bit `i` (0-based from the left) to `sigma(i)`.
pub fn bit_permutation(n: usize, sigma: &Permutation) -> Result<Permutation> {
    if sigma.len() != n {
        return input(format!("bit permutation of {} slots for width {n}", sigma.len()));
    }
    let map = (0..1usize << n)
        .map(|x| {
            (0..n).filter(|&i| (x >> (n - 1 - i)) & 1 == 1).fold(0, |acc, i| acc | 1 << (n - 1 - sigma.apply(i)))
        })
        .collect();
    Permutation::new(map)
}

/// Whether the encoding square commutes at `x`: the register route
/// compares the encoded evolved string with the basis permutation applied
/// to the encoded string, the screen route likewise on configurations.
/// The register and screen dynamics are the canonical transports of
/// `dynamics`.
pub fn encode_commutes(x: &BitString, dynamics: &Permutation) -> Result<bool> {
    Ok(encode_commutes_with(x, dynamics, &Encodings::canonical())?.holds)
}

pub fn encode_commutes_with(x: &BitString, dynamics: &Permutation, enc: &Encodings) -> Result<EncodeCheck> {
    let n = x.width();
    check_dynamics(n, dynamics)?;
    let evolved = BitString::new(n, dynamics.apply(x.index() as usize) as u64)?;
    let reg_lhs = (enc.register)(&evolved);
    let reg_rhs = dynamics.apply((enc.register)(x).min(dynamics.len() - 1));
    let reg_ok = (enc.register)(x) < dynamics.len() && reg_lhs == reg_rhs;
    let scr_lhs = (enc.screen)(&evolved);
    let screen = HolographicScreen::new((enc.screen)(x))?;
    let scr_rhs = if screen.slots() == n { screen.evolve(dynamics)?.config() } else { screen.config() };
    let scr_ok = screen.slots() == n && scr_lhs == scr_rhs;
    Ok(EncodeCheck {
        holds: reg_ok && scr_ok,
        register: (reg_lhs, reg_rhs),
        screen: (scr_lhs.to_string(), scr_rhs.to_string()),
    })
}
