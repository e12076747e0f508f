use std::process::Command;

fn qfibre(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qfibre"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn reduce_renders_the_normal_form() {
    let (code, out, _) = qfibre(&["reduce", "d*a", "--preset", "suq2"]);
    assert_eq!(code, 0);
    assert!(out.contains(": 1 + (q^-1)*b*c\n"), "{out}");
}

#[test]
fn monopole_of_charge_one() {
    let (code, out, _) = qfibre(&["monopole", "--n", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ω(Z) = w1; c = 1"), "{out}");
}

#[test]
fn hopf_check_passes() {
    let (code, out, _) = qfibre(&["check", "hopf", "--preset", "suq2", "--degree", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn records_carry_the_seed() {
    let (code, out, _) = qfibre(&[
        "coinvariants",
        "--degree",
        "2",
        "--format",
        "records",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    for line in out.lines() {
        assert!(
            line.starts_with("id=") && line.contains(" seed=7 "),
            "{line}"
        );
    }
    assert!(out.contains("dim 4: 1, a*b, d*c, b*c"));
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    assert_eq!(qfibre(&["basis", "--preset", "nope"]).0, 2);
    assert_eq!(qfibre(&["reduce", "d*"]).0, 2);
    assert_eq!(qfibre(&["frobnicate"]).0, 2);
    let dir = std::env::temp_dir().join(format!("qfibre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.qf");
    std::fs::write(
        &bad,
        "algebra A {\n  gens: a, b\n  rel: a*b = b*a*q + 1\n}\n",
    )
    .unwrap();
    let (code, _, err) = qfibre(&["basis", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("a*b"), "{err}");
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("qfibre-cli1-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // S(Z) = Z breaks the antipode axiom
    let doc = dir.join("broken.qf");
    std::fs::write(
        &doc,
        "algebra H {\n  gens: Z, Zi\n  rel: Z*Zi = 1\n  rel: Zi*Z = 1\n}\nhopf H {\n  D Z = Z(x)Z; eps Z = 1; S Z = Z\n  D Zi = Zi(x)Zi; eps Zi = 1; S Zi = Zi\n}\n",
    )
    .unwrap();
    let (code, out, err) = qfibre(&[
        "check",
        "hopf",
        "--file",
        doc.to_str().unwrap(),
        "--degree",
        "2",
    ]);
    assert_eq!(code, 1, "{out}{err}");
    assert!(out.contains("[FAIL]"));
}

#[test]
fn gauge_file_on_the_trivial_bundle() {
    let dir = std::env::temp_dir().join(format!("qfibre-cli2-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("f.qf");
    std::fs::write(&f, "map f : H -> P {\n  Z = q*y; Zi = q^-1*Y\n}\n").unwrap();
    let (code, out, err) = qfibre(&[
        "gauge",
        f.to_str().unwrap(),
        "--preset",
        "trivial",
        "--degree",
        "2",
        "--b",
        "y",
    ]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("Z ↦ (q^2)*y"), "{out}");
}

#[test]
fn section_on_the_fibration_is_not_multiplicative() {
    let (code, out, _) = qfibre(&["section", "--degree", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("section is not an algebra map"));
}
