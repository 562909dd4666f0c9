def id : (A : Type 0) -> A -> A := fun (A : Type 0) (x : A) => x;
main id Nat (id Nat 3);
