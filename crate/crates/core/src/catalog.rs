//! Named arithmetic functions, as written on command lines: `name[:k][/s]`.
//!
//! `sigma:2` is `sigma_2`, `id:3` is `n^3`, and a trailing `/s` divides by
//! `n^s`, so `mobius/2` is `mu(n)/n^2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::funcs::{
    scale_by_power, sieve_epsilon, sieve_id_pow, sieve_mobius, sieve_phi, sieve_sigma_k, sieve_unit, Table,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFn {
    Unit,
    Epsilon,
    Id(u32),
    Mobius,
    Phi,
    Sigma(u32),
}

impl BaseFn {
    pub fn build(self, limit: usize) -> Result<Table> {
        Ok(Table::Int(match self {
            BaseFn::Unit => sieve_unit(limit)?,
            BaseFn::Epsilon => sieve_epsilon(limit)?,
            BaseFn::Id(k) => sieve_id_pow(k, limit)?,
            BaseFn::Mobius => sieve_mobius(limit)?,
            BaseFn::Phi => sieve_phi(limit)?,
            BaseFn::Sigma(k) => sieve_sigma_k(k, limit)?,
        }))
    }

    fn takes_k(self) -> bool {
        matches!(self, BaseFn::Id(_) | BaseFn::Sigma(_))
    }

    pub fn with_k(self, k: u32) -> Self {
        match self {
            BaseFn::Id(_) => BaseFn::Id(k),
            BaseFn::Sigma(_) => BaseFn::Sigma(k),
            other => other,
        }
    }
}

impl fmt::Display for BaseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseFn::Unit => f.write_str("unit"),
            BaseFn::Epsilon => f.write_str("epsilon"),
            BaseFn::Id(k) => write!(f, "id:{k}"),
            BaseFn::Mobius => f.write_str("mobius"),
            BaseFn::Phi => f.write_str("phi"),
            BaseFn::Sigma(k) => write!(f, "sigma:{k}"),
        }
    }
}

/// A base function optionally divided by `n^scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionSpec {
    pub base: BaseFn,
    pub scale: f64,
}

impl FunctionSpec {
    pub fn new(base: BaseFn) -> Self {
        FunctionSpec { base, scale: 0.0 }
    }

    /// Integer table when unscaled, real table otherwise.
    pub fn build(&self, limit: usize) -> Result<Table> {
        let table = self.base.build(limit)?;
        if self.scale == 0.0 {
            Ok(table)
        } else {
            Ok(Table::Real(scale_by_power(&table, self.scale)?))
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if self.scale != 0.0 {
            write!(f, "/{}", self.scale)?;
        }
        Ok(())
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("bad function spec {text:?}: {why}"));
        let (head, scale) = match text.split_once('/') {
            Some((head, s)) => {
                let s: f64 = s.trim().parse().map_err(|_| bad("scale is not a number"))?;
                if !s.is_finite() {
                    return Err(bad("scale must be finite"));
                }
                (head, s)
            }
            None => (text, 0.0),
        };
        let (name, k) = match head.split_once(':') {
            Some((name, k)) => (
                name,
                Some(k.trim().parse::<u32>().map_err(|_| bad("k is not a natural number"))?),
            ),
            None => (head, None),
        };
        let base = match name.trim() {
            "unit" | "one" | "1" => BaseFn::Unit,
            "epsilon" | "eps" => BaseFn::Epsilon,
            "id" => BaseFn::Id(1),
            "mobius" | "mu" => BaseFn::Mobius,
            "phi" => BaseFn::Phi,
            "sigma" => BaseFn::Sigma(1),
            other => return Err(bad(&format!("unknown function {other:?}"))),
        };
        let base = match k {
            Some(k) if base.takes_k() => base.with_k(k),
            Some(_) => return Err(bad("this function takes no k")),
            None => base,
        };
        Ok(FunctionSpec { base, scale })
    }
}
