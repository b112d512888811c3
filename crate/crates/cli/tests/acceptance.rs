//! The fourteen acceptance criteria, each under its runtime bound.

use plexus_cli::selftest;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in selftest::criteria() {
        let o = selftest::run(&c, 0);
        println!("{}", o.line(true));
        if !o.ok() {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "criteria failed or exceeded their bound: {failed:?}");
}
