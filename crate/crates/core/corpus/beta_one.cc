axiom A : Type 0;
axiom a : A;
main (fun (x : A) => x) a;
