'''
Integer relation searches: PSLQ over balls, the elimination step for linear forms,
and the certificates built from them.
'''
