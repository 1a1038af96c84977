use clap::Subcommand;
use henselian::algebra::{
    decompose_local, fact_to_idem, idem_to_fact, min_poly, split_by_element, zero_dim_witness,
    FiniteAlgebra,
};
use henselian::poly::PolyRing;
use henselian::ring::{Ring, RingSpec, Value};
use serde_json::json;

use crate::args::{self, Res};
use crate::output::Output;
use crate::Ctx;

#[derive(Subcommand, Debug)]
pub enum AlgCmd {
    /// Matrix of multiplication by an element on the basis `1, x, …`.
    MultMatrix {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    CharPoly {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// Minimal polynomial over a field base.
    MinPoly {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    Invert {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// Whether the element lies in the Jacobson radical.
    Radical {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// `(k, s)` with `x^k (1 − x s(x)) = 0`, over a field base.
    Witness {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// Idempotent on which the element is invertible, over a field base.
    Split {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
    /// Primitive idempotents and local factors over a finite field.
    Decompose {
        #[arg(long)]
        algebra: String,
    },
    /// Idempotent of a residually coprime monic factorization `f = g·h`.
    FactToIdem {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Monic factorization `f = g·h` cut out by an idempotent.
    IdemToFact {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        elem: String,
    },
}

fn elem(b: &FiniteAlgebra<RingSpec>, text: &str) -> Res<Vec<Value>> {
    Ok(b.element(args::vector(b.base(), text)?)?)
}

pub fn check_idempotent(out: &mut Output, b: &FiniteAlgebra<RingSpec>, e: &[Value]) -> Res<()> {
    out.check(b.equal(&b.mul(&e.to_vec(), &e.to_vec()), &e.to_vec()), "e^2=e")
}

pub fn run(_ctx: &Ctx, cmd: AlgCmd) -> Res<Output> {
    match cmd {
        AlgCmd::MultMatrix { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            Ok(Output::new(json!({ "matrix": args::matrix_json(b.base(), &b.mult_matrix(&x)) })))
        }
        AlgCmd::CharPoly { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            let chi = b.char_poly(&x);
            let mut out = Output::new(json!({ "poly": args::poly_json(b.base(), &chi) }));
            out.check(b.is_zero(&b.eval_poly(&chi, &x)), "chi(x)=0")?;
            Ok(out)
        }
        AlgCmd::MinPoly { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            let mu = min_poly(&b, &x)?;
            let mut out = Output::new(json!({ "poly": args::poly_json(b.base(), &mu) }));
            out.check(b.is_zero(&b.eval_poly(&mu, &x)), "mu(x)=0")?;
            Ok(out)
        }
        AlgCmd::Invert { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            let inv = b.invert_element(&x)?;
            let mut out = Output::new(json!({ "inverse": args::vec_json(b.base(), &inv) }));
            out.check(b.is_one(&b.mul(&x, &inv)), "x*inverse=1")?;
            Ok(out)
        }
        AlgCmd::Radical { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            Ok(Output::new(json!({ "radical": b.radical_member(&x)? })))
        }
        AlgCmd::Witness { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            let (k, s) = zero_dim_witness(&b, &x)?;
            let mut out = Output::new(json!({ "k": k, "s": args::poly_json(b.base(), &s) }));
            let t = b.sub(&b.one(), &b.mul(&x, &b.eval_poly(&s, &x)));
            out.check(b.is_zero(&b.mul(&b.pow(&x, k as u64), &t)), "x^k(1-x s(x))=0")?;
            Ok(out)
        }
        AlgCmd::Split { algebra, elem: x } => {
            let b = args::algebra(&algebra)?;
            let x = elem(&b, &x)?;
            let e = split_by_element(&b, &x)?;
            let mut out = Output::new(json!({ "idempotent": args::vec_json(b.base(), e.element()) }));
            check_idempotent(&mut out, &b, e.element())?;
            Ok(out)
        }
        AlgCmd::Decompose { algebra } => {
            let b = args::algebra(&algebra)?;
            let parts = decompose_local(&b)?;
            let idems: Vec<Vec<Value>> = parts.iter().map(|(e, _)| e.element().clone()).collect();
            let mut out = Output::new(json!({
                "idempotents": idems.iter().map(|e| args::vec_json(b.base(), e)).collect::<Vec<_>>(),
                "ranks": parts.iter().map(|(_, a)| a.rank()).collect::<Vec<_>>(),
            }));
            check_system(&mut out, &b, &idems)?;
            Ok(out)
        }
        AlgCmd::FactToIdem { algebra, g, h } => {
            let b = args::algebra(&algebra)?;
            let (g, h) = (args::poly(b.base(), &g)?, args::poly(b.base(), &h)?);
            let e = fact_to_idem(&b, &g, &h)?;
            let mut out = Output::new(json!({ "idempotent": args::vec_json(b.base(), e.element()) }));
            check_idempotent(&mut out, &b, e.element())?;
            Ok(out)
        }
        AlgCmd::IdemToFact { algebra, elem: e } => {
            let b = args::algebra(&algebra)?;
            let e = elem(&b, &e)?;
            let (g, h) = idem_to_fact(&b, &e)?;
            let pr = PolyRing::new(b.base().clone());
            let mut out = Output::new(json!({
                "g": args::poly_json(b.base(), &g),
                "h": args::poly_json(b.base(), &h),
            }));
            let f = b.modulus().expect("monogenic");
            out.check(pr.equal(&pr.mul(&g, &h), f), "g*h=f")?;
            Ok(out)
        }
    }
}

/// Orthogonal idempotents summing to one.
pub fn check_system(out: &mut Output, b: &FiniteAlgebra<RingSpec>, idems: &[Vec<Value>]) -> Res<()> {
    let mut ok = idems.iter().all(|e| b.equal(&b.mul(e, e), e));
    out.check(ok, "e^2=e")?;
    for (i, e) in idems.iter().enumerate() {
        for f in &idems[i + 1..] {
            ok &= b.is_zero(&b.mul(e, f));
        }
    }
    out.check(ok, "e_i*e_j=0")?;
    out.check(b.is_one(&b.sum(idems.iter())), "sum e_i=1")
}
