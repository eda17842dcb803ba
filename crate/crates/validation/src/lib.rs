//! Acceptance suite. Run with `cargo test -p timoshenko-validation --test acceptance`;
//! it prints one PASS/FAIL line per criterion and exits non-zero if any fails.
