""" Module defining constants """

# string constants for solver names
EXACT = 'exact'
BNB = 'bnb'
APPROX3 = 'approx3'
PTAS = 'ptas'
EPTAS = 'eptas'
