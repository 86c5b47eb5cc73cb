use proptest::prelude::*;
use qcut_core::qasm::parse_qasm_named;
use qcut_core::*;

const FIXTURE: &str = r#"OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
creg c[3];
u3(pi/2, 0, pi) q[0];
rz(-pi/4) q[1];
cx q[0], q[1];
barrier q[0], q[1], q[2];
u3(0.1, 0.2, 0.3) q[2];
cx q[1], q[2];
measure q[0] -> c[0];
measure q[1] -> c[1];
measure q[2] -> c[2];
"#;

#[test]
fn hand_parsed_fixture() {
    let c = parse_qasm(FIXTURE).unwrap();
    let pi = std::f64::consts::PI;
    let expected = vec![
        GateApp::new("u3", &[0], &[pi / 2.0, 0.0, pi]),
        GateApp::new("rz", &[1], &[-pi / 4.0]),
        GateApp::new("cx", &[0, 1], &[]),
        GateApp::new("u3", &[2], &[0.1, 0.2, 0.3]),
        GateApp::new("cx", &[1, 2], &[]),
    ];
    assert_eq!(c.num_qubits, 3);
    assert_eq!(c.gates, expected);
}

#[test]
fn single_cx() {
    let c = parse_qasm("OPENQASM 2.0; include \"qelib1.inc\"; qreg q[2]; cx q[0],q[1];").unwrap();
    assert_eq!(c.num_qubits, 2);
    assert_eq!(c.gates, vec![GateApp::new("cx", &[0, 1], &[])]);
}

#[test]
fn duplicate_operand_rejected() {
    assert!(matches!(
        parse_qasm("qreg q[1]; cx q[0],q[0];"),
        Err(ParseError::DuplicateOperand { .. })
    ));
}

fn gate() -> impl Strategy<Value = GateApp> {
    let one = prop_oneof![Just("h"), Just("x"), Just("sdg"), Just("t")];
    let rot = prop_oneof![Just("rx"), Just("ry"), Just("rz"), Just("p")];
    let two = prop_oneof![Just("cx"), Just("cz"), Just("swap")];
    let two_rot = prop_oneof![Just("rzz"), Just("crz"), Just("cp")];
    prop_oneof![
        (one, 0usize..6).prop_map(|(k, q)| GateApp::new(k, &[q], &[])),
        (rot, 0usize..6, -10.0f64..10.0).prop_map(|(k, q, t)| GateApp::new(k, &[q], &[t])),
        (two, 0usize..6, 1usize..6).prop_map(|(k, a, d)| GateApp::new(k, &[a, (a + d) % 6], &[])),
        (two_rot, 0usize..6, 1usize..6, -1e3f64..1e3).prop_map(|(k, a, d, t)| GateApp::new(
            k,
            &[a, (a + d) % 6],
            &[t]
        )),
        (
            0usize..6,
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            -1e-8f64..1e-8,
            0.0f64..7.0
        )
            .prop_map(|(q, a, b, c)| GateApp::new("u3", &[q], &[a, b, c])),
    ]
}

proptest! {
    #[test]
    fn round_trip_is_stable(gates in proptest::collection::vec(gate(), 0..40)) {
        let mut c = CircuitIR::new("rt", 6);
        c.gates = gates;
        let back = parse_qasm_named(&c.to_qasm(), "rt").unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_qasm(), c.to_qasm());
    }

    #[test]
    fn wire_projection_preserves_order(gates in proptest::collection::vec(gate(), 0..40)) {
        let mut c = CircuitIR::new("w", 6);
        c.gates = gates;
        let back = parse_qasm(&c.to_qasm()).unwrap();
        for q in 0..6 {
            let src: Vec<&GateApp> = c.gates.iter().filter(|g| g.operands.contains(&q)).collect();
            let got: Vec<&GateApp> = back.wire(q).into_iter().map(|i| &back.gates[i]).collect();
            prop_assert_eq!(src, got);
        }
    }
}
