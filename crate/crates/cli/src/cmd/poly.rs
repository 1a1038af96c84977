use clap::{Subcommand, ValueEnum};
use henselian::poly::{field_factor_seeded, PolyRing};
use henselian::ring::Ring;
use serde_json::json;

use crate::args::{self, Res};
use crate::output::{usage, Output};
use crate::Ctx;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Neg,
    /// `f(g(X))`
    Compose,
    /// `f(X + a)`
    Shift,
    /// `X^d f(1/X)`, `d` defaulting to `deg f`
    Reverse,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    Arith {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
        /// Shift amount.
        #[arg(long)]
        a: Option<String>,
        /// Reversal degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Division by `g` with unit leading coefficient.
    Divmod {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Resultant {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// `u·f + v·g = 1` for monic, residually coprime `f, g`.
    Bezout {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Monic irreducible factors with multiplicities over a finite field.
    Factor {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
    },
}

pub fn run(ctx: &Ctx, cmd: PolyCmd) -> Res<Output> {
    match cmd {
        PolyCmd::Arith {
            ring,
            op,
            f,
            g,
            a,
            degree,
        } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let f = args::poly(&r, &f)?;
            let need_g = || -> Res<_> {
                let g = g.as_deref().ok_or_else(|| usage("--g is required"))?;
                args::poly(&r, g)
            };
            let out = match op {
                Op::Add => pr.add(&f, &need_g()?),
                Op::Sub => pr.sub(&f, &need_g()?),
                Op::Mul => pr.mul(&f, &need_g()?),
                Op::Neg => pr.neg(&f),
                Op::Compose => pr.compose(&f, &need_g()?),
                Op::Shift => {
                    let a = a.as_deref().ok_or_else(|| usage("--a is required for shift"))?;
                    pr.shift(&f, &args::value(&r, a)?)
                }
                Op::Reverse => pr.reverse(&f, degree.unwrap_or(f.deg()))?,
            };
            Ok(Output::new(json!({ "poly": args::poly_json(&r, &out) })))
        }
        PolyCmd::Divmod { ring, f, g } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let (f, g) = (args::poly(&r, &f)?, args::poly(&r, &g)?);
            let (q, rem) = pr.divmod(&f, &g)?;
            let mut out = Output::new(json!({
                "quotient": args::poly_json(&r, &q),
                "remainder": args::poly_json(&r, &rem),
            }));
            out.check(pr.equal(&pr.add(&pr.mul(&q, &g), &rem), &f), "q*g+r=f")?;
            out.check(rem.is_zero() || rem.deg() < g.deg(), "deg r < deg g")?;
            Ok(out)
        }
        PolyCmd::Resultant { ring, f, g } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let res = pr.resultant(&args::poly(&r, &f)?, &args::poly(&r, &g)?);
            Ok(Output::new(json!({ "resultant": args::val_json(&r, &res) })))
        }
        PolyCmd::Bezout { ring, f, g } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let (f, g) = (args::poly(&r, &f)?, args::poly(&r, &g)?);
            let (u, v) = pr.bezout_coprime(&f, &g)?;
            let mut out = Output::new(json!({
                "u": args::poly_json(&r, &u),
                "v": args::poly_json(&r, &v),
            }));
            out.check(pr.is_one(&pr.add(&pr.mul(&u, &f), &pr.mul(&v, &g))), "u*f+v*g=1")?;
            Ok(out)
        }
        PolyCmd::Factor { ring, f } => {
            let r = args::ring(&ring)?;
            let pr = PolyRing::new(r.clone());
            let f = args::poly(&r, &f)?;
            let factors = field_factor_seeded(&r, &f, ctx.seed)?;
            let mut prod = pr.one();
            for (p, m) in &factors {
                for _ in 0..*m {
                    prod = pr.mul(&prod, p);
                }
            }
            let mut out = Output::new(json!({
                "factors": factors
                    .iter()
                    .map(|(p, m)| json!({ "poly": args::poly_json(&r, p), "multiplicity": m }))
                    .collect::<Vec<_>>(),
            }));
            out.check(pr.equal(&prod, &pr.make_monic(&f)?), "product of factors = monic(f)")?;
            Ok(out)
        }
    }
}
