use clap::Subcommand;
use henselian::ring::{Ring, RingSpec, Value};
use henselian::uda::{galois_from_idempotent, Permutation, UdaAlgebra};
use serde_json::json;

use crate::args::{self, Res};
use crate::output::{usage, Output};
use crate::Ctx;

#[derive(clap::Args, Debug)]
pub struct Spec {
    #[arg(long)]
    ring: String,
    /// Monic polynomial, low to high.
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand, Debug)]
pub enum UdaCmd {
    /// Rank and basis labels (exponent tuples).
    Build {
        #[command(flatten)]
        spec: Spec,
    },
    Mul {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Action of a permutation given as one-based images.
    Act {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        perm: String,
        #[arg(long)]
        elem: String,
    },
    /// Base element equal to a symmetric element.
    Invariant {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        elem: String,
    },
    /// Whether an idempotent is zero, via its rank polynomial.
    IsZero {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        elem: String,
    },
    /// Galois idempotent below a nonzero idempotent, with its orbit.
    Galois {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        idem: String,
    },
}

pub fn build(ctx: &Ctx, spec: &Spec) -> Res<UdaAlgebra<RingSpec>> {
    let r = args::ring(&spec.ring)?;
    let f = args::poly(&r, &spec.poly)?;
    Ok(UdaAlgebra::with_cap(r, f, ctx.cap_n)?)
}

pub fn elem(d: &UdaAlgebra<RingSpec>, text: &str) -> Res<Vec<Value>> {
    Ok(d.element(args::vector(d.base(), text)?)?)
}

fn perm(text: &str) -> Res<Permutation> {
    let images: Vec<usize> = serde_json::from_str(text)
        .map_err(|e| usage(format!("permutation must be a list of one-based images: {}", e)))?;
    Ok(Permutation::from_one_based(&images)?)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn run(ctx: &Ctx, cmd: UdaCmd) -> Res<Output> {
    match cmd {
        UdaCmd::Build { spec } => {
            let d = build(ctx, &spec)?;
            let mut out = Output::new(json!({
                "rank": d.rank(),
                "degree": d.degree(),
                "basis": d.basis_labels(),
            }));
            out.check(d.rank() == factorial(d.degree()), "rank=n!")?;
            Ok(out)
        }
        UdaCmd::Mul { spec, a, b } => {
            let d = build(ctx, &spec)?;
            let (a, b) = (elem(&d, &a)?, elem(&d, &b)?);
            Ok(Output::new(json!({ "product": args::vec_json(d.base(), &d.uda_mul(&a, &b)) })))
        }
        UdaCmd::Act { spec, perm: p, elem: x } => {
            let d = build(ctx, &spec)?;
            let p = perm(&p)?;
            let x = elem(&d, &x)?;
            Ok(Output::new(json!({ "image": args::vec_json(d.base(), &d.sn_act(&p, &x)?) })))
        }
        UdaCmd::Invariant { spec, elem: x } => {
            let d = build(ctx, &spec)?;
            let x = elem(&d, &x)?;
            let c = d.reduce_invariant(&x)?;
            let mut out = Output::new(json!({ "value": args::val_json(d.base(), &c) }));
            out.check(d.equal(&d.embed(&c), &x), "embedded value equals input")?;
            Ok(out)
        }
        UdaCmd::IsZero { spec, elem: x } => {
            let d = build(ctx, &spec)?;
            let x = elem(&d, &x)?;
            Ok(Output::new(json!({ "zero": d.idempotent_is_zero(&x)? })))
        }
        UdaCmd::Galois { spec, idem } => {
            let d = build(ctx, &spec)?;
            let e = elem(&d, &idem)?;
            let g = galois_from_idempotent(&d, &e)?;
            let k = d.base();
            let mut out = Output::new(json!({
                "galois": args::vec_json(k, g.h.element()),
                "orbit": g.orbit.iter().map(|c| args::vec_json(k, c)).collect::<Vec<_>>(),
                "representatives": g.representatives.iter().map(|s| s.one_based()).collect::<Vec<_>>(),
                "subset": g.subset,
            }));
            check_basic(&mut out, &d, &g.orbit)?;
            let below = d.sum(g.subset.iter().map(|&i| &g.orbit[i]));
            out.check(d.equal(&below, &e), "sum of subset = input")?;
            Ok(out)
        }
    }
}

/// Orthogonal idempotents summing to one.
pub fn check_basic(out: &mut Output, d: &UdaAlgebra<RingSpec>, elems: &[Vec<Value>]) -> Res<()> {
    out.check(elems.iter().all(|e| d.equal(&d.uda_mul(e, e), e)), "e^2=e")?;
    let mut ok = true;
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            ok &= d.is_zero(&d.uda_mul(a, b));
        }
    }
    out.check(ok, "e_i*e_j=0")?;
    out.check(d.is_one(&d.sum(elems.iter())), "sum e_i=1")
}
