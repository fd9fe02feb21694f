//! Holds the `acceptance` test target; run it with
//! `cargo test -p tropfactor-validation --test acceptance -- --nocapture`.
