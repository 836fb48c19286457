use super::input::{parse_vector, AlgebraData};
use super::report::{
    digest_of, module_for, CohomologyOutcome, ConjugateOutcome, DecomposeOutcome, Entry,
    IdempotentOutcome, Report, VerifyOutcome,
};
use crate::algebra::{Algebra, EnvelopingAlgebra};
use crate::cohomology::{
    allowed_cochains1, allowed_cochains2, delta1, delta2, right_translate,
    verify_separating_idempotent, Cochain1, Cochain2,
};
use crate::linalg::sparse::to_dense;
use crate::linalg::{Field, FieldElement, Subspace};

/// Outcome of re-checking a report from its own data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reverification {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Reverification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Ctx<'a> {
    a: &'a Algebra,
    field: Field,
    n: usize,
}

impl Ctx<'_> {
    fn vector(&self, v: &[String], len: usize) -> Result<Vec<FieldElement>, String> {
        parse_vector(self.field, len, v).map_err(|e| e.to_string())
    }

    fn span(&self, vs: &[Vec<String>]) -> Result<Subspace, String> {
        let parsed = vs
            .iter()
            .map(|v| self.vector(v, self.n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_vectors(self.field, self.n, &parsed))
    }

    fn one_minus(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.a.unit().iter().zip(v).map(|(u, x)| u - x).collect()
    }
}

fn verify_certificate(
    ctx: &Ctx,
    out: &mut Reverification,
    i: &IdempotentOutcome,
) -> Result<(), String> {
    let a = ctx.a;
    let env = EnvelopingAlgebra::new(a).map_err(|e| e.to_string())?;
    match i {
        IdempotentOutcome::Certified {
            b, p, residuals, ..
        } => {
            let b = ctx.vector(b, env.dim())?;
            let reports = verify_separating_idempotent(&env, &b);
            for r in &reports {
                out.check(r.failed == 0, || {
                    format!("idempotent: {:?} fails on {} instances", r.family, r.failed)
                });
            }
            let recorded: Vec<_> = residuals
                .iter()
                .map(|r| (r.family, r.checked, r.failed))
                .collect();
            let actual: Vec<_> = reports
                .iter()
                .map(|r| (r.family, r.checked, r.failed))
                .collect();
            out.check(recorded == actual, || {
                "idempotent: residual table differs".into()
            });
            out.check(p.len() == ctx.n, || {
                "idempotent: splitting has the wrong number of columns".into()
            });
            for (x, px) in p.iter().enumerate().take(ctx.n) {
                let px = ctx.vector(px, env.dim())?;
                let expected = to_dense(&right_translate(&env, &b, x), env.dim(), ctx.field);
                out.check(px == expected, || {
                    format!("idempotent: p(b_{x}) is not b·b_{x}")
                });
            }
        }
        IdempotentOutcome::NotSeparable {
            h1_kernel_dimension,
            witness,
        } => {
            let kernel = env.kernel_module().map_err(|e| e.to_string())?;
            match witness {
                Some(w) => {
                    let w = ctx.vector(w, ctx.n * kernel.dim())?;
                    out.check(w.iter().any(|c| !c.is_zero()), || {
                        "idempotent: witness is zero".into()
                    });
                    let d = Cochain1::from_values(a, &kernel, w);
                    out.check(
                        delta1(a, &kernel, &d).values.iter().all(|c| c.is_zero()),
                        || "idempotent: witness is not a derivation".into(),
                    );
                }
                None => out.check(*h1_kernel_dimension == 0, || {
                    "idempotent: missing witness".into()
                }),
            }
        }
        IdempotentOutcome::Error { .. } => {}
    }
    Ok(())
}

fn verify_cohomology(
    ctx: &Ctx,
    out: &mut Reverification,
    c: &CohomologyOutcome,
) -> Result<(), String> {
    let CohomologyOutcome::Computed { groups } = c else {
        return Ok(());
    };
    let a = ctx.a;
    let mut env = None;
    for g in groups {
        let m = module_for(g.module, a, &mut env).map_err(|e| e.to_string())?;
        let tag = format!("H{}(A, {:?})", g.degree, g.module);
        out.check(m.dim() == g.module_dimension, || {
            format!("{tag}: module dimension differs")
        });
        out.check(
            g.dim_h == g.representatives.len() && g.dim_z == g.dim_b + g.dim_h,
            || format!("{tag}: dimensions are inconsistent"),
        );
        let (len, allowed) = match g.degree {
            1 => (ctx.n * m.dim(), allowed_cochains1(a, &m)),
            _ => (ctx.n * ctx.n * m.dim(), allowed_cochains2(a, &m)),
        };
        for rep in &g.representatives {
            let v = ctx.vector(rep, len)?;
            out.check(
                v.iter().zip(&allowed).all(|(c, ok)| *ok || c.is_zero()),
                || format!("{tag}: representative uses a forbidden coordinate"),
            );
            out.check(v.iter().any(|c| !c.is_zero()), || {
                format!("{tag}: representative is zero")
            });
            let closed = if g.degree == 1 {
                delta1(a, &m, &Cochain1::from_values(a, &m, v))
                    .values
                    .iter()
                    .all(|c| c.is_zero())
            } else {
                delta2(a, &m, &Cochain2::from_values(a, &m, v))
                    .iter()
                    .all(|c| c.is_zero())
            };
            out.check(closed, || format!("{tag}: representative is not a cocycle"));
        }
    }
    Ok(())
}

fn check_radical(
    ctx: &Ctx,
    out: &mut Reverification,
    j: &Subspace,
    index: Option<usize>,
    tag: &str,
) {
    out.check(ctx.a.check_ideal(j).is_ok(), || {
        format!("{tag}: radical is not an ideal")
    });
    let (left, right) = ctx.a.power_chains(j);
    let vanishes = |c: &[Subspace]| c.last().map(|s| s.is_zero()).unwrap_or(true);
    out.check(vanishes(&left) && vanishes(&right), || {
        format!("{tag}: radical is not nilpotent")
    });
    if let Some(k) = index {
        out.check(left.len() == k, || {
            format!("{tag}: nilpotency index differs")
        });
    }
}

fn check_complement(ctx: &Ctx, out: &mut Reverification, j: &Subspace, d: &Subspace, tag: &str) {
    out.check(ctx.a.check_closed(d).is_ok(), || {
        format!("{tag}: complement is not a subalgebra")
    });
    out.check(d.contains(ctx.a.unit()), || {
        format!("{tag}: complement misses the unit")
    });
    out.check(
        d.intersection(j).is_zero() && d.dim() + j.dim() == ctx.n,
        || format!("{tag}: complement is not complementary to the radical"),
    );
}

fn verify_decomposition(
    ctx: &Ctx,
    out: &mut Reverification,
    d: &DecomposeOutcome,
) -> Result<(), String> {
    match d {
        DecomposeOutcome::Split {
            radical,
            index,
            complement,
            ..
        } => {
            let j = ctx.span(radical)?;
            let dsub = ctx.span(complement)?;
            out.check(
                j.dim() == radical.len() && dsub.dim() == complement.len(),
                || "decompose: bases are not independent".into(),
            );
            check_radical(ctx, out, &j, Some(*index), "decompose");
            check_complement(ctx, out, &j, &dsub, "decompose");
        }
        DecomposeOutcome::Obstructed { phi, .. } => {
            out.check(phi.iter().any(|c| c != "0"), || {
                "decompose: obstruction is zero".into()
            });
        }
        DecomposeOutcome::Error { .. } => {}
    }
    Ok(())
}

fn verify_conjugacy(
    ctx: &Ctx,
    out: &mut Reverification,
    c: &ConjugateOutcome,
) -> Result<(), String> {
    let ConjugateOutcome::Conjugated {
        radical,
        b,
        c,
        v,
        right_inverse,
        left_inverse,
    } = c
    else {
        return Ok(());
    };
    let a = ctx.a;
    let j = ctx.span(radical)?;
    let (bs, cs) = (ctx.span(b)?, ctx.span(c)?);
    check_radical(ctx, out, &j, None, "conjugate");
    check_complement(ctx, out, &j, &bs, "conjugate B");
    check_complement(ctx, out, &j, &cs, "conjugate C");
    let v = ctx.vector(v, ctx.n)?;
    out.check(j.contains(&v), || {
        "conjugate: v is not in the radical".into()
    });
    let w = ctx.one_minus(&v);
    let left: Vec<_> = cs.basis_dense().iter().map(|x| a.multiply(&w, x)).collect();
    let right: Vec<_> = bs.basis_dense().iter().map(|x| a.multiply(x, &w)).collect();
    out.check(
        Subspace::from_vectors(ctx.field, ctx.n, &left)
            == Subspace::from_vectors(ctx.field, ctx.n, &right),
        || "conjugate: (1 - v)C differs from B(1 - v)".into(),
    );
    let r = ctx.vector(right_inverse, ctx.n)?;
    let l = ctx.vector(left_inverse, ctx.n)?;
    out.check(a.multiply(&w, &r) == a.unit(), || {
        "conjugate: right inverse fails".into()
    });
    out.check(a.multiply(&l, &w) == a.unit(), || {
        "conjugate: left inverse fails".into()
    });
    Ok(())
}

/// Re-checks digests and every certificate in `report` by evaluating
/// identities only.
pub fn reverify(report: &Report) -> Reverification {
    let mut out = Reverification::default();
    out.check(
        digest_of(&report.input.document) == report.input.digest,
        || "input digest mismatch".into(),
    );
    out.check(digest_of(&report.results) == report.results_digest, || {
        "results digest mismatch".into()
    });
    let r = &report.results;
    let field = match r.field.parse::<Field>() {
        Ok(f) => f,
        Err(e) => {
            out.failures.push(format!("field: {e}"));
            return out;
        }
    };
    let algebra = r.algebra.build(field).ok();
    out.check(algebra.as_ref().map(|a| a.dim()) == r.dimension, || {
        "algebra dimension differs".into()
    });
    for entry in &r.entries {
        if let Entry::Verify(v) = entry {
            check_verify(&mut out, &r.algebra, field, v);
            continue;
        }
        let Some(a) = algebra.as_ref() else { continue };
        let ctx = Ctx {
            a,
            field,
            n: a.dim(),
        };
        let plain = a.without_grading();
        let plain_ctx = Ctx {
            a: &plain,
            field,
            n: a.dim(),
        };
        let outcome = match entry {
            Entry::Idempotent(i) => verify_certificate(&ctx, &mut out, i),
            Entry::Cohomology(c) => verify_cohomology(&ctx, &mut out, c),
            Entry::Decompose(d) => verify_decomposition(&plain_ctx, &mut out, d),
            Entry::Conjugate(c) => verify_conjugacy(&plain_ctx, &mut out, c),
            Entry::Verify(_) => unreachable!(),
        };
        if let Err(e) = outcome {
            out.failures.push(format!("{:?}: {e}", entry.analysis()));
        }
    }
    out
}

fn check_verify(
    out: &mut Reverification,
    data: &AlgebraData,
    field: Field,
    recorded: &VerifyOutcome,
) {
    let algebra = data.build(field).map_err(|_| String::new());
    let fresh = super::report::verify_outcome(data, &algebra);
    // tool error messages are not certificates, only their presence is compared
    let same = match (recorded, &fresh) {
        (VerifyOutcome::Error { .. }, VerifyOutcome::Error { .. }) => true,
        _ => &fresh == recorded,
    };
    out.check(same, || "verify: outcome differs".into());
}
