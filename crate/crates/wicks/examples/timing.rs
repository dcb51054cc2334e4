fn main() {
    let t = std::time::Instant::now();
    let words = wicks::enumerate_gluings(2, 1).unwrap();
    println!("sequential: {} gluings in {:?}", words.len(), t.elapsed());
    let t = std::time::Instant::now();
    let census = wicks::build_census(2, words).unwrap();
    println!("census: {} classes in {:?}", census.class_count(), t.elapsed());
    println!("mass: {}", census.mass());
    println!("hist: {:?}", census.order_histogram());
    let t = std::time::Instant::now();
    let par = wicks::enumerate_gluings(2, 4).unwrap();
    println!("parallel: {} gluings in {:?}", par.len(), t.elapsed());
    let t = std::time::Instant::now();
    let c3 = wicks::generate_recursive(3).unwrap();
    println!("genus-3 recursive: {} classes in {:?}", c3.class_count(), t.elapsed());
}
