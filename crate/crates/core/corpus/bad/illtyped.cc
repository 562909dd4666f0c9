axiom A : Type 0;
main (fun (x : A) => x) Nat;
