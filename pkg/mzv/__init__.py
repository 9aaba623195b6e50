'''
A laboratory for multiple zeta values.

The shared types (indices, words, formal sums) and the infrastructure live in mzv.core,
the mathematical modules next to it:

- mzv.exactla   -- exact linear algebra over Q
- mzv.numeval   -- ball arithmetic and rigorous evaluation
- mzv.relations -- stuffle/shuffle/duality/Hoffman relations, dimension bounds, Hoffman reduction
- mzv.lindep    -- PSLQ searches and independence certificates
'''
