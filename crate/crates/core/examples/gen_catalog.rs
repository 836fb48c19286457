//! Regenerates the input catalog under `data/`.
//!
//! `cargo run --example gen_catalog -- data`

use std::path::PathBuf;

use metalg::constructions::{cube_zero_extension, disguise, square_zero_extension, Extension};
use metalg::linalg::{Field, FieldElement};
use metalg::workbench::{
    format_vector, structure_spec, Analysis, ConjugateSpec, Doubling, MetagroupFile, MetagroupSpec,
    ModuleKind, WorkbenchInput,
};

fn base(name: &str, field: &str, analyses: &[Analysis]) -> WorkbenchInput {
    WorkbenchInput {
        name: Some(name.to_string()),
        field: field.to_string(),
        analyses: analyses.to_vec(),
        modules: vec![
            ModuleKind::Regular,
            ModuleKind::Enveloping,
            ModuleKind::Kernel,
        ],
        degrees: vec![1, 2],
        embedding: None,
        metagroup: None,
        algebra: None,
        conjugate: None,
    }
}

fn cyclic(name: &str, field: &str, orders: &[usize]) -> WorkbenchInput {
    let mut input = base(name, field, &Analysis::ALL);
    input.metagroup = Some(MetagroupSpec {
        cyclic: Some(orders.to_vec()),
        ..Default::default()
    });
    input
}

/// `B = D` and `C = (1 + v₀)D(1 − v₀)` for `v₀` the first radical basis vector.
fn extension(name: &str, ext: &Extension) -> WorkbenchInput {
    let a = &ext.algebra;
    let mut input = base(name, &a.field().to_string(), &Analysis::ALL);
    input.degrees = vec![1];
    input.algebra = Some(structure_spec(a));
    let v0 = ext.radical.basis_dense()[0].clone();
    let plus: Vec<FieldElement> = a.unit().iter().zip(&v0).map(|(u, v)| u + v).collect();
    let minus: Vec<FieldElement> = a.unit().iter().zip(&v0).map(|(u, v)| u - v).collect();
    let b = ext.complement.basis_dense();
    let mut c = Vec::new();
    for d in &b {
        // (1 + v₀) is the inverse of (1 − v₀) as soon as v₀² = 0
        let inverse = if a.multiply(&v0, &v0).iter().all(|x| x.is_zero()) {
            plus.clone()
        } else {
            metalg::decomposition::nilpotent_inverse(a, &v0)
                .expect("radical element")
                .0
        };
        c.push(format_vector(&a.multiply(&a.multiply(&inverse, d), &minus)));
    }
    input.conjugate = Some(ConjugateSpec {
        b: b.iter().map(|v| format_vector(v)).collect(),
        c,
    });
    input
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir).expect("create catalog directory");
    let write = |file: &str, input: &WorkbenchInput| {
        let text = toml::to_string(input).expect("serialize input");
        std::fs::write(dir.join(file), text).expect("write catalog entry");
    };

    write("z2_q.toml", &cyclic("Q[Z/2]", "q", &[2]));
    write("z3_q.toml", &cyclic("Q[Z/3]", "q", &[3]));
    write("z4_q.toml", &cyclic("Q[Z/4]", "q", &[4]));
    write("klein_q.toml", &cyclic("Q[Z/2 x Z/2]", "q", &[2, 2]));
    write("z2_gf2.toml", &cyclic("GF(2)[Z/2]", "gf:2", &[2]));
    write("z3_gf3.toml", &cyclic("GF(3)[Z/3]", "gf:3", &[3]));

    let mut octonions = base(
        "octonions over Q",
        "q",
        &[Analysis::Verify, Analysis::Idempotent, Analysis::Cohomology],
    );
    octonions.degrees = vec![1];
    octonions.metagroup = Some(MetagroupSpec {
        cayley_dickson: Some(Doubling {
            levels: 3,
            signs: [false; 3],
        }),
        ..Default::default()
    });
    write("octonions_q.toml", &octonions);

    let mut sedenions = base("sedenion metagroup", "q", &[Analysis::Verify]);
    sedenions.metagroup = Some(MetagroupSpec {
        cayley_dickson: Some(Doubling {
            levels: 4,
            signs: [false; 3],
        }),
        ..Default::default()
    });
    write("sedenions_q.toml", &sedenions);

    let s3 = MetagroupFile {
        n: Some(6),
        unit: 0,
        psi: vec![0],
        // S₃ with 0..2 the rotations and 3..5 the reflections
        product: vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ],
        names: Some(
            ["e", "r", "r2", "s", "sr", "sr2"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
    };
    std::fs::write(dir.join("s3.metagroup.toml"), toml::to_string(&s3).unwrap()).unwrap();
    let mut s3_input = base(
        "Q[S3]",
        "q",
        &[Analysis::Verify, Analysis::Idempotent, Analysis::Decompose],
    );
    s3_input.metagroup = Some(MetagroupSpec {
        file: Some("s3.metagroup.toml".into()),
        ..Default::default()
    });
    write("s3_q.toml", &s3_input);

    let mut broken = base("broken table", "q", &[Analysis::Verify]);
    broken.metagroup = Some(MetagroupSpec {
        unit: Some(0),
        psi: Some(vec![0]),
        product: Some(vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]]),
        ..Default::default()
    });
    write("broken_q.toml", &broken);

    let q = Field::Rational;
    let gf3 = Field::Prime(3);
    write(
        "ext_k2_q.toml",
        &extension(
            "square-zero extension over Q",
            &disguise(&square_zero_extension(q).unwrap(), 1).unwrap(),
        ),
    );
    write(
        "ext_k2_gf3.toml",
        &extension(
            "square-zero extension over GF(3)",
            &disguise(&square_zero_extension(gf3).unwrap(), 2).unwrap(),
        ),
    );
    write(
        "ext_k3_q.toml",
        &extension(
            "cube-zero extension over Q",
            &disguise(&cube_zero_extension(q).unwrap(), 3).unwrap(),
        ),
    );
}
