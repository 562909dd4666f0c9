def CNat : Type 1 := (X : Type 0) -> (X -> X) -> X -> X;
def two : CNat := fun (X : Type 0) (s : X -> X) (z : X) => s (s z);
def succ : CNat -> CNat := fun (n : CNat) (X : Type 0) (s : X -> X) (z : X) => s (n X s z);
def toNat : CNat -> Nat := fun (n : CNat) => n Nat (fun (k : Nat) => add k 1) 0;
main toNat two;
