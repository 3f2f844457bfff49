use qtriang::catalog;
use qtriang::classify::{enumerate, Options, Order};
use qtriang::interchange::{
    catalog_to_json, datum_from_json, datum_to_json, parse, tensor_from_json, tensor_to_json, to_canonical_string,
};

fn report(name: &str, order: Order, threads: usize) -> String {
    let g = catalog::group(name).unwrap();
    let opts = Options {
        triangular_only: false,
        order,
        threads,
    };
    to_canonical_string(&catalog_to_json(&enumerate(&g, opts).unwrap()))
}

#[test]
fn reports_are_byte_identical_across_threads_and_loop_order() {
    for name in ["Z4", "S3", "D4"] {
        let base = report(name, Order::Forward, 1);
        assert_eq!(base, report(name, Order::Forward, 4), "{name}");
        assert_eq!(base, report(name, Order::Reversed, 3), "{name}");
    }
}

#[test]
fn catalog_entries_round_trip() {
    let g = catalog::group("Q8").unwrap();
    let c = enumerate(&g, Options::new(true)).unwrap();
    for e in &c.entries {
        let text = to_canonical_string(&datum_to_json(&e.datum));
        let d = datum_from_json(&parse(&text).unwrap(), None).unwrap();
        assert_eq!(to_canonical_string(&datum_to_json(&d)), text);
        let r = tensor_from_json(&parse(&to_canonical_string(&tensor_to_json(&e.r))).unwrap(), None).unwrap();
        assert_eq!(r, e.r);
    }
}
