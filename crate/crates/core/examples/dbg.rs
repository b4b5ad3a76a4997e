use braid_core::braid::parse_braid;
use braid_core::enumerate::*;
fn main() {
    for t in ["AbAbAbCbC", "AbAbAbCbCb", "AbAbAbACbC", "AbAbCbAbCb", "AbAbAbCbCbC", "AbAbACbAbCb"] {
        let w = parse_braid(t).unwrap().idempotent_reduce();
        let (canon, coll) = commutation_canonical(w.word());
        let l = w.len();
        let beaten = beaten_by_smaller_generator_debug(&w, 3, l);
        println!("{:<12} class={:<12} coll={} beaten={:?}", t, canon.to_string(), coll, beaten);
    }
}
