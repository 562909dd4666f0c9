def const : (A B : Type 0) -> A -> B -> A := fun (A B : Type 0) (x : A) (y : B) => x;
main const Nat (Nat -> Nat) 5 (fun (n : Nat) => n);
