use std::process::Command;

fn run(name: &str) -> String {
    let out = Command::new(env!("CARGO"))
        .args(["run", "-q", "--example", name])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("cargo runs");
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn examples_run() {
    let expect = [
        ("quadratic_forms", "FIX-D5t: rank 6, tits == euler: true"),
        ("b8_multisection", "search found 1 multisection(s)"),
        ("multicoil_replay", "coherent true"),
        ("random_surgery", "50 scripts: coherent 50"),
        ("module_varieties", "P1 degenerates to S1+S2: true"),
        ("count_dimvectors", "[5:1 6:1 7:1]: [\"P7\", \"I5\"]"),
        ("dot_export", "tube.dot"),
    ];
    for (name, needle) in expect {
        let out = run(name);
        assert!(out.contains(needle), "{name}:\n{out}");
    }
}
