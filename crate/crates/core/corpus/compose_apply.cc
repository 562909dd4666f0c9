def compose : (A : Type 0) -> (B : A -> Type 0) -> (C : (x : A) -> B x -> Type 0)
    -> ((y : A) -> (z : B y) -> C y z) -> (g : (x : A) -> B x) -> (x : A) -> C x (g x) :=
  fun (A : Type 0) (B : (x : A) -> Type 0) (C : (x : A) -> (y : B x) -> Type 0)
      (f : (y : A) -> (z : B y) -> C y z) (g : (x : A) -> B x) (x : A) => f x (g x);
main compose Nat (fun (x : Nat) => Nat) (fun (x y : Nat) => Nat)
  (fun (x y : Nat) => add x y) (fun (x : Nat) => add x 1) 3;
