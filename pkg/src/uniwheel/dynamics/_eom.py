"""Generated multibody dynamics kernels.  DO NOT EDIT.

Auto-generated by tools/generate_eom.py (Kane's method for the rolling
drive wheel + body + reaction wheel system).  Regenerate after model changes.
"""

import math

import numpy as np
from numba import njit

G_ACC = 9.81

PARAM_NAMES = ['mW', 'mB', 'IWoff', 'IWspin', 'IBx', 'IBy', 'IBz', 'rW', 'lW', 'C1', 'C2']
N_PARAMS = 11

@njit(cache=True)
def mass_matrix(phi, theta, p):
    """Generalized mass matrix, rows/cols ordered (phi, theta, psi, qD, qR)."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBy = p[5]; IBz = p[6]; rW = p[7]; lW = p[8]
    x0 = math.cos(theta)
    x1 = x0**2
    x2 = IBx*x1
    x3 = IWspin*x1
    x4 = IBz*x1
    x5 = IWoff*x1
    x6 = lW**2
    x7 = mW*x6
    x8 = x1*x7
    x9 = (1/4)*mB*x6
    x10 = x1*x9
    x11 = rW**2
    x12 = mB*x11
    x13 = 2*mW
    x14 = x11*x13
    x15 = x12 + x14
    x16 = lW*rW
    x17 = mB*x16
    x18 = x0*x17
    x19 = x0*x13*x16
    x20 = x18 + x19
    x21 = IWspin*x0
    x22 = mW*x16
    x23 = math.cos(phi)
    x24 = x23*math.sin(theta)
    x25 = -x24*(IBx*x0 - IBz*x0 - IWoff*x0 + x0*x7 + x0*x9 + (1/2)*x17 + x21 + x22)
    x26 = IWspin + x15
    x27 = IBy + IWoff + x20 + x26 + x7 + x9
    x28 = math.sin(phi)
    x29 = x27*x28
    x30 = x0*x22 + (1/2)*x18 + x26
    x31 = x23**2
    x32 = x28*x30
    x33 = -IWspin*x24
    out = np.empty((5, 5), dtype=np.float64)
    out[0, 0] = IBz + 2*IWoff + x10 + x15 + x2 + x20 + x3 - x4 - x5 + x8
    out[0, 1] = 0
    out[0, 2] = x25
    out[0, 3] = 0
    out[0, 4] = x21
    out[1, 0] = 0
    out[1, 1] = x27
    out[1, 2] = x29
    out[1, 3] = x30
    out[1, 4] = 0
    out[2, 0] = x25
    out[2, 1] = x29
    out[2, 2] = IBx*x31 - IBy*x31 - x10*x31 - x12*x31 - x14*x31 - x18*x31 - x19*x31 - x2*x31 + x27 - x3*x31 + x31*x4 + x31*x5 - x31*x8
    out[2, 3] = x32
    out[2, 4] = x33
    out[3, 0] = 0
    out[3, 1] = x30
    out[3, 2] = x32
    out[3, 3] = x26
    out[3, 4] = 0
    out[4, 0] = x21
    out[4, 1] = 0
    out[4, 2] = x33
    out[4, 3] = 0
    out[4, 4] = IWspin
    return out


@njit(cache=True)
def bias_vector(phi, theta, dpsi, dphi, dtheta, dqD, dqR, tauD, tauR, p):
    """Velocity, gravity, input and yaw-friction forces h with M @ accel + h = 0."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBy = p[5]; IBz = p[6]; rW = p[7]; lW = p[8]; C1 = p[9]; C2 = p[10]
    g_acc = G_ACC
    x0 = math.cos(phi)
    x1 = IWoff*dqD
    x2 = x0*x1
    x3 = IWoff*dtheta
    x4 = math.sin(theta)
    x5 = dqR*x4
    x6 = x3*x5
    x7 = math.sin(phi)
    x8 = g_acc*x7
    x9 = mB*rW
    x10 = IWoff*x0
    x11 = dpsi*x10
    x12 = dtheta*x11
    x13 = mW*x8
    x14 = 2*rW
    x15 = x0**3
    x16 = dpsi*x15
    x17 = dtheta*x16
    x18 = IWspin*x16
    x19 = IWspin*x17
    x20 = IWoff*dpsi
    x21 = x5*x7
    x22 = math.cos(theta)
    x23 = lW*x22
    x24 = dpsi**2
    x25 = x24*x7
    x26 = x0*x25
    x27 = rW**2
    x28 = mB*x27
    x29 = dpsi*x0
    x30 = dqD*x29
    x31 = dtheta*x29
    x32 = (1/2)*mB
    x33 = x22**2
    x34 = x31*x33
    x35 = x7**2
    x36 = x29*x35
    x37 = dtheta*x36
    x38 = x4**2
    x39 = IBz*x38
    x40 = IWspin*dqD
    x41 = IWspin*x37
    x42 = IWspin*dtheta
    x43 = x33*x42
    x44 = mW*x27
    x45 = 2*x44
    x46 = mW*x23
    x47 = rW*x46
    x48 = x23*x9
    x49 = x7**3
    x50 = x4**3
    x51 = dqR*x50
    x52 = x49*x51
    x53 = IWspin*x52
    x54 = x7**4
    x55 = x51*x54
    x56 = x0**4
    x57 = x51*x56
    x58 = IWspin*dpsi
    x59 = x21*x33
    x60 = dphi*dtheta
    x61 = lW*x4
    x62 = x61*x9
    x63 = x60*x62
    x64 = x0**2
    x65 = IBx*x60
    x66 = x22*x4
    x67 = x35*x66
    x68 = 2*x67
    x69 = x64*x66
    x70 = 2*x69
    x71 = dphi*x42
    x72 = mW*x14*x61
    x73 = x60*x72
    x74 = x51*x7
    x75 = x64*x74
    x76 = lW**2
    x77 = x32*x76
    x78 = mW*x76
    x79 = 2*x78
    x80 = x26*x33
    x81 = x67*x76
    x82 = x32*x60
    x83 = x69*x76
    x84 = x60*x78
    x85 = x51*x64
    x86 = 2*x35
    x87 = x85*x86
    x88 = (1/4)*mB
    x89 = x76*x88
    x90 = dphi*x11
    x91 = 2*x90
    x92 = math.tanh(C2*dpsi)
    x93 = C1*x92
    x94 = dphi*x16
    x95 = dphi*x18
    x96 = dqR*x11
    x97 = x22*x96
    x98 = IWoff*x94
    x99 = g_acc*x61
    x100 = mW*x0
    x101 = dphi*x29
    x102 = x101*x33
    x103 = dphi*x36
    x104 = dphi*x5
    x105 = IWoff*x35
    x106 = x104*x105
    x107 = IWoff*x64
    x108 = x104*x107
    x109 = IWspin*x103
    x110 = x22**3
    x111 = dqR*x110
    x112 = 2*x101
    x113 = x112*x28
    x114 = 4*x101
    x115 = x114*x44
    x116 = (1/2)*x62
    x117 = x116*x24
    x118 = mW*x24
    x119 = rW*x61
    x120 = x118*x119
    x121 = dtheta**2
    x122 = x116*x121
    x123 = mW*x121
    x124 = x119*x123
    x125 = mW*x119
    x126 = dpsi*x125
    x127 = dqD*x126
    x128 = x35*x90
    x129 = x114*x47
    x130 = dpsi*x116
    x131 = dqD*x130
    x132 = dtheta*x130
    x133 = dtheta*x126
    x134 = IWspin*dphi
    x135 = IBx*x38
    x136 = dphi**2
    x137 = IBx*x136
    x138 = IBz*x33
    x139 = x24*x69
    x140 = IWoff*dphi
    x141 = x107*x66
    x142 = IWspin*x136
    x143 = x66*x76
    x144 = x143*x88
    x145 = x125*x136
    x146 = x136*x64
    x147 = IBz*x136
    x148 = x136*x66
    x149 = IWspin*x104*x33
    x150 = dqR*x22
    x151 = x150*x38
    x152 = x102*x77
    x153 = x102*x79
    x154 = x116*x136
    x155 = x136*x78
    x156 = dphi*x107
    x157 = x35*x51
    x158 = x136*x88
    x159 = x81*x88
    x160 = dphi*x2
    x161 = x10*x60
    x162 = dphi*x15
    x163 = dtheta*x162
    x164 = IWspin*x163
    x165 = x140*x21
    x166 = x162*x3
    x167 = x112*x7
    x168 = x7*x91
    x169 = dtheta*x10
    x170 = x150*x169
    x171 = IWspin*x167
    x172 = x0*x35
    x173 = x172*x60
    x174 = dphi*x172
    x175 = x174*x42
    x176 = x0*x60
    x177 = x66*x7
    x178 = x161*x35
    x179 = dphi*x43
    x180 = x0*x42
    x181 = x148*x7
    x182 = dpsi*dtheta
    x183 = x143*x182
    x184 = x182*x70
    x185 = dpsi*x70
    x186 = x170*x38
    x187 = x182*x62
    x188 = x182*x72
    x189 = 2*x15*x151
    x190 = tauR*x38
    x191 = dphi*x3*x4
    x192 = dphi*x20
    x193 = x50*x71
    x194 = x110*x6
    x195 = x3*x51
    x196 = x179*x4
    x197 = x22*x42
    out = np.empty((5,), dtype=np.float64)
    out[0] = IBx*dpsi*dtheta*x0*x35*x38 + IBx*dpsi*dtheta*x15*x38 + IBx*x0*x24*x38*x7 - IBx*x34 - IBy*x17 - IBy*x26 - IBy*x37 + 2*IBz*dphi*dtheta*x22*x35*x4 + 2*IBz*dphi*dtheta*x22*x4*x64 + IBz*dpsi*dtheta*x0*x33*x35 + IBz*dpsi*dtheta*x15*x33 + IBz*x0*x24*x33*x7 + 2*IWoff*dphi*dtheta*x22*x35*x4 + 2*IWoff*dphi*dtheta*x22*x4*x64 + IWoff*dpsi*dqD*x0*x35 + IWoff*dpsi*dqD*x15 + IWoff*dpsi*dqR*x33*x4*x7 + IWoff*dpsi*dqR*x49*x50 + IWoff*dpsi*dqR*x50*x64*x7 + IWoff*dpsi*dtheta*x0*x33 + IWoff*dpsi*dtheta*x0*x35 + IWoff*dpsi*dtheta*x15 + IWoff*dqR*dtheta*x33*x4 + 2*IWoff*dqR*dtheta*x35*x50*x64 + IWoff*dqR*dtheta*x50*x54 + IWoff*dqR*dtheta*x50*x56 + IWoff*x0*x24*x7 - IWoff*x17*x38 + IWspin*dpsi*dtheta*x0*x35*x38 + IWspin*dpsi*dtheta*x15*x38 + IWspin*x0*x24*x38*x7 - IWspin*x26 - IWspin*x34 - dpsi*x2 - dpsi*x53 - dqD*x18 - x10*x25*x38 - x12*x35*x38 - 2*x12 - x13*x14 - x13*x23 - x14*x26*x46 - x19 - x20*x21 - x23*x32*x8 - x26*x28 - x26*x45 - x26*x48 - x28*x30 - x28*x31 - x30*x45 - x30*x47 - 1/2*x30*x48 - x31*x39 - x31*x45 - 3*x31*x47 - 3/2*x31*x48 - x34*x77 - x34*x79 - x35*x63 - x35*x73 - x36*x40 - x41 - x42*x55 - x42*x57 - x42*x87 - x43*x5 - x58*x59 - x58*x75 - x6 - x63*x64 - x64*x73 - x65*x68 - x65*x70 - x68*x71 - x68*x84 - x70*x71 - x70*x84 - x78*x80 - x8*x9 - x80*x89 - x81*x82 - x82*x83
    out[1] = IBx*x102 - IBx*x139 + IBy*x103 + IBy*x94 + IBz*x139 - IWoff*x151*x16 + IWspin*x102 + IWspin*x111*x29 - IWspin*x139 + IWspin*x151*x36 - x0*x32*x99 - x100*x99 + x101*x39 - x103*x135 - x103*x138 - x105*x148 - x106*x33 + x106 - x108*x33 + x108 - x109*x38 + x109 - x110*x96 + x112*x48 + x113 + x115 + x116*x146 + x117*x35 - x117 - x118*x143 + x118*x81 + x120*x35 - x120 - x121*x144 + x121*x159 + x121*x83*x88 - x122 - x123*x143 + x123*x81 + x123*x83 - x124 + x125*x146 + x127*x7 + x128*x38 - x128 + x129 + x131*x7 - x132*x7 - x133*x7 + x134*x55 + x134*x57 + x134*x87 - x135*x94 - x136*x141 + x137*x67 + x137*x69 - x138*x94 - x140*x55 - x140*x57 + x141*x24 + x142*x67 + x142*x69 - x144*x24 + x145*x35 - x147*x67 - x147*x69 + x149*x35 + x149*x64 + x151*x18 + x152 + x153 + x154*x35 + x155*x67 + x155*x69 - 2*x156*x157 + x158*x81 + x158*x83 + x159*x24 - x33*x90 - x35*x38*x97 - x38*x95 + x38*x98 + x7*x93 + x91 + x95 + x97 - x98
    out[2] = -IBx*x176*x33 + IBx*x184 + IBy*x163 + IBy*x167 + IBy*x173 - IBz*x184 - IWoff*x181 + dphi*x53 + 2*mW*x183 - x0*x179 - x1*x162 + 2*x100*x38*x60*x76 + x111*x169 - x111*x180 + x113*x7 + x115*x7 - x122*x7 - x124*x7 + x127 + x129*x7 + x131 + x132 + x133 + x134*x59 + x134*x75 + x135*x163 - x135*x167 + x135*x173 + x137*x177 + x138*x163 - x138*x167 + x138*x173 - x140*x52 + x142*x177 + x145*x7 - x147*x177 - 2*x151*x172*x42 + x151*x180 + x152*x7 + x153*x7 + x154*x7 - x156*x74 - x160*x35 + x160 + x161*x33 + 2*x161 + x162*x40 + x164*x38 + x164 - x165*x33 + x165 - x166*x38 - x166 + x167*x48 + x168*x38 - x168 - x170 - x171*x38 + x171 + x174*x40 + x175*x38 + x175 + x176*x38*x77 - x176*x39 - x178*x38 - x178 + x181*x78 + x181*x89 - x182*x32*x81 - x182*x68*x78 + x183*x32 - x185*x3 + x185*x42 + x186*x86 - x186 - x187*x35 - x188*x35 + x189*x3 - x189*x42 + x93
    out[3] = C1*x7*x92 + IWoff*dphi*dpsi*x0 + IWspin*dphi*dpsi*x0*x35 + IWspin*dphi*dpsi*x15 + dphi*dpsi*lW*mB*rW*x0*x22 + 2*dphi*dpsi*lW*mW*rW*x0*x22 + 2*dphi*dpsi*mB*x0*x27 + 4*dphi*dpsi*mW*x0*x27 - tauD*x35 - tauD*x64 - x117 - x120 - x122 - x124 - x128 - x187*x7 - x188*x7 - x98
    out[4] = IWoff*dphi*dpsi*x4*x7 + IWoff*dphi*dtheta*x33*x35*x4 + IWoff*dphi*dtheta*x33*x4*x64 + 2*IWoff*dphi*dtheta*x35*x50*x64 + IWoff*dphi*dtheta*x50*x54 + IWoff*dphi*dtheta*x50*x56 + IWoff*dpsi*dtheta*x0*x110 + IWoff*dpsi*dtheta*x0*x22*x35*x38 + IWoff*dpsi*dtheta*x15*x22*x38 + IWoff*dqR*dtheta*x110*x4 + IWoff*dqR*dtheta*x22*x35*x4 + IWoff*dqR*dtheta*x22*x35*x50 + IWoff*dqR*dtheta*x22*x4*x64 + IWoff*dqR*dtheta*x22*x50*x64 + IWspin*dphi*dpsi*x33*x4*x7 + IWspin*dphi*dpsi*x49*x50 + IWspin*dphi*dpsi*x50*x64*x7 + IWspin*dqR*dtheta*x110*x35*x4 + IWspin*dqR*dtheta*x110*x4*x64 + 2*IWspin*dqR*dtheta*x22*x35*x50*x64 + IWspin*dqR*dtheta*x22*x50*x54 + IWspin*dqR*dtheta*x22*x50*x56 - IWspin*x110*x31 - tauR*x33 - x110*x42*x5 - x12*x22 - x157*x197 - x19*x22*x38 - x190*x35 - x190*x64 - x191*x35 - x191*x64 - x192*x33*x4*x7 - x192*x49*x50 - x192*x50*x64*x7 - x193*x54 - x193*x56 - x193*x64*x86 - x194*x35 - x194*x64 - x195*x22*x54 - x195*x22*x56 - x195*x22*x64*x86 - x196*x35 - x196*x64 - x197*x85 - x22*x38*x41 - x22*x6
    return out


@njit(cache=True)
def mass_matrix_dphi(phi, theta, p):
    """d(mass_matrix)/d(phi)."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBy = p[5]; IBz = p[6]; rW = p[7]; lW = p[8]
    x0 = math.cos(theta)
    x1 = lW*rW
    x2 = mW*x1
    x3 = mB*x1
    x4 = (1/2)*x3
    x5 = lW**2
    x6 = mW*x5
    x7 = mB*x5
    x8 = (1/4)*x7
    x9 = math.sin(phi)
    x10 = x9*math.sin(theta)
    x11 = x10*(IBx*x0 - IBz*x0 - IWoff*x0 + IWspin*x0 + x0*x6 + x0*x8 + x2 + x4)
    x12 = math.cos(phi)
    x13 = x0*x3
    x14 = x0*x2
    x15 = rW**2
    x16 = mB*x15
    x17 = mW*x15
    x18 = IWspin + x16 + 2*x17
    x19 = x12*(IBy + IWoff + x13 + 2*x14 + x18 + x6 + x8)
    x20 = 2*IBx
    x21 = x0**2
    x22 = 2*x21
    x23 = x12*(x0*x4 + x14 + x18)
    x24 = IWspin*x10
    out = np.empty((5, 5), dtype=np.float64)
    out[0, 0] = 0
    out[0, 1] = 0
    out[0, 2] = x11
    out[0, 3] = 0
    out[0, 4] = 0
    out[1, 0] = 0
    out[1, 1] = 0
    out[1, 2] = x19
    out[1, 3] = 0
    out[1, 4] = 0
    out[2, 0] = x11
    out[2, 1] = x19
    out[2, 2] = x12*x9*(2*IBy - IBz*x22 - IWoff*x22 + IWspin*x22 + 2*x13 + 4*x14 + 2*x16 + 4*x17 + x20*x21 - x20 + (1/2)*x21*x7 + x22*x6)
    out[2, 3] = x23
    out[2, 4] = x24
    out[3, 0] = 0
    out[3, 1] = 0
    out[3, 2] = x23
    out[3, 3] = 0
    out[3, 4] = 0
    out[4, 0] = 0
    out[4, 1] = 0
    out[4, 2] = x24
    out[4, 3] = 0
    out[4, 4] = 0
    return out


@njit(cache=True)
def mass_matrix_dtheta(phi, theta, p):
    """d(mass_matrix)/d(theta)."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBz = p[6]; rW = p[7]; lW = p[8]
    x0 = math.sin(theta)
    x1 = lW*rW
    x2 = mB*x1
    x3 = math.cos(theta)
    x4 = 2*x3
    x5 = IBx*x4
    x6 = IWspin*x4
    x7 = 2*mW
    x8 = x1*x7
    x9 = lW**2
    x10 = mB*x9
    x11 = x10*x3
    x12 = (1/2)*x11
    x13 = x3*x7*x9
    x14 = math.cos(phi)
    x15 = 4*IBx
    x16 = 4*IBz
    x17 = 4*IWoff
    x18 = 4*IWspin
    x19 = 4*mW
    x20 = x19*x9
    x21 = (1/4)*x14*(x0**2*(x10 + x15 - x16 - x17 + x18 + x20) - x3*(x1*x19 + x11 + x15*x3 - x16*x3 - x17*x3 + x18*x3 + 2*x2 + x20*x3))
    x22 = -IWspin*x0
    x23 = x0*x1
    x24 = x23*(mB + x7)
    x25 = math.sin(phi)
    x26 = -x24*x25
    x27 = x23*((1/2)*mB + mW)
    x28 = -x27
    x29 = x14**2
    x30 = -x25*x27
    x31 = -IWspin*x14*x3
    out = np.empty((5, 5), dtype=np.float64)
    out[0, 0] = x0*(2*IBz*x3 + 2*IWoff*x3 - x12 - x13 - x2 - x5 - x6 - x8)
    out[0, 1] = 0
    out[0, 2] = x21
    out[0, 3] = 0
    out[0, 4] = x22
    out[1, 0] = 0
    out[1, 1] = -x24
    out[1, 2] = x26
    out[1, 3] = x28
    out[1, 4] = 0
    out[2, 0] = x21
    out[2, 1] = x26
    out[2, 2] = x0*(-IBz*x29*x4 - IWoff*x29*x4 + x12*x29 + x13*x29 + x2*x29 - x2 + x29*x5 + x29*x6 + x29*x8 - x8)
    out[2, 3] = x30
    out[2, 4] = x31
    out[3, 0] = 0
    out[3, 1] = x28
    out[3, 2] = x30
    out[3, 3] = 0
    out[3, 4] = 0
    out[4, 0] = x22
    out[4, 1] = 0
    out[4, 2] = x31
    out[4, 3] = 0
    out[4, 4] = 0
    return out


@njit(cache=True)
def bias_jac_state(phi, theta, dpsi, dphi, dtheta, dqD, dqR, tauD, tauR, p):
    """d(bias_vector)/d(phi, theta, dpsi, dphi, dtheta, dqD, dqR)."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBy = p[5]; IBz = p[6]; rW = p[7]; lW = p[8]; C1 = p[9]; C2 = p[10]
    g_acc = G_ACC
    x0 = IWoff*dqD
    x1 = math.sin(phi)
    x2 = dpsi*x1
    x3 = IWoff*dtheta
    x4 = 2*x3
    x5 = math.cos(phi)
    x6 = g_acc*x5
    x7 = mB*rW
    x8 = 2*mW
    x9 = x1**3
    x10 = dpsi*x9
    x11 = IBy*dtheta
    x12 = IWspin*x10
    x13 = x1**2
    x14 = dpsi**2
    x15 = IBy*x14
    x16 = x5**2
    x17 = IWoff*x16
    x18 = x14*x17
    x19 = IWspin*x13
    x20 = x14*x19
    x21 = x10*x3
    x22 = IWoff*dpsi
    x23 = math.sin(theta)
    x24 = dqR*x23
    x25 = x22*x24*x5
    x26 = rW**2
    x27 = mB*x26
    x28 = dqD*x2
    x29 = dtheta*x2
    x30 = math.cos(theta)
    x31 = (1/2)*mB
    x32 = x30*x31
    x33 = lW*x32
    x34 = x33*x6
    x35 = mW*x30
    x36 = lW*x35
    x37 = x36*x6
    x38 = IWoff*x13
    x39 = x14*x38
    x40 = IWspin*x16
    x41 = x14*x40
    x42 = x30**2
    x43 = IBx*x42
    x44 = x16*x2
    x45 = x23**2
    x46 = IBz*x45
    x47 = IWspin*x42
    x48 = dtheta*x47
    x49 = mW*x26
    x50 = 2*x49
    x51 = lW*rW
    x52 = x35*x51
    x53 = dtheta*x17
    x54 = x2*x53
    x55 = x3*x42
    x56 = x32*x51
    x57 = dtheta*mB
    x58 = rW*x57
    x59 = lW*x58
    x60 = (3/2)*x59
    x61 = 3*x52
    x62 = x13*x14
    x63 = x5**3
    x64 = x22*x63
    x65 = x23**3
    x66 = dqR*x65
    x67 = IWoff*x42
    x68 = dpsi*x5
    x69 = x67*x68
    x70 = x14*x16
    x71 = IBx*x45
    x72 = IBz*x42
    x73 = dtheta*x10
    x74 = IWspin*x63
    x75 = dpsi*x74
    x76 = x66*x75
    x77 = IWspin*x45
    x78 = x10*x77
    x79 = x47*x68
    x80 = x24*x79
    x81 = mB*x51
    x82 = x30*x81
    x83 = x18*x45
    x84 = x38*x68
    x85 = lW**2
    x86 = x42*x85
    x87 = x31*x86
    x88 = dtheta*x8
    x89 = x86*x88
    x90 = x14*x35
    x91 = x51*x90
    x92 = 2*x13
    x93 = x16*x29
    x94 = x19*x68
    x95 = x66*x94
    x96 = x40*x45
    x97 = mW*x85
    x98 = x42*x97
    x99 = (1/4)*mB
    x100 = x86*x99
    x101 = dqR*x3
    x102 = x101*x30
    x103 = x30**3
    x104 = x101*x103
    x105 = mW*x1
    x106 = lW*x23
    x107 = g_acc*x106
    x108 = IWspin*dqR
    x109 = dtheta*x103
    x110 = x1*x22
    x111 = dqR*x110
    x112 = x111*x30
    x113 = x1*x31
    x114 = rW*x106
    x115 = mW*x114
    x116 = dqD*x115
    x117 = x102*x45
    x118 = 2*x117
    x119 = x103*x108
    x120 = x119*x2
    x121 = 2*x30
    x122 = dqR*x77
    x123 = dtheta*x122
    x124 = dtheta*x23
    x125 = IBx*x121
    x126 = x124*x125
    x127 = IBz*x121
    x128 = x124*x127
    x129 = x121*x23
    x130 = IWspin*x68
    x131 = x121*x130
    x132 = dqD*x114
    x133 = x132*x31
    x134 = x106*x58
    x135 = (3/2)*x68
    x136 = x124*x51
    x137 = mW*x136
    x138 = x137*x68
    x139 = 2*dtheta
    x140 = dphi*x139
    x141 = x140*x71
    x142 = x140*x43
    x143 = x140*x46
    x144 = x140*x72
    x145 = 2*dphi
    x146 = dtheta*x38
    x147 = x146*x45
    x148 = x45*x53
    x149 = x42*x53
    x150 = x19*x45
    x151 = x19*x42
    x152 = dtheta*x151
    x153 = x40*x42
    x154 = dtheta*x153
    x155 = dpsi*x63
    x156 = x121*x45
    x157 = x3*x63
    x158 = dpsi*x129
    x159 = x121*x122
    x160 = dtheta*x74
    x161 = dphi*x30
    x162 = x161*x59
    x163 = x140*x52
    x164 = x23*x68
    x165 = x30*x57
    x166 = x165*x85
    x167 = x106*x7
    x168 = x1*x14*x5
    x169 = 2*x5
    x170 = x1*x23
    x171 = x14*x170*x30
    x172 = x169*x171
    x173 = IBz*x169
    x174 = x171*x173
    x175 = IWoff*x172
    x176 = 4*x68
    x177 = x124*x85
    x178 = x177*x35
    x179 = x176*x178
    x180 = x114*x8
    x181 = x22*x45*x9
    x182 = dqR*x30
    x183 = x1**4
    x184 = 3*x117
    x185 = x5**4
    x186 = x182*x78
    x187 = x183*x77
    x188 = dtheta*x187
    x189 = 3*x182
    x190 = x185*x77
    x191 = dtheta*x190
    x192 = x125*x13
    x193 = x124*x68
    x194 = x127*x13
    x195 = x121*x38
    x196 = x121*x19
    x197 = x31*x45
    x198 = dtheta*x197
    x199 = x13*x85
    x200 = dphi*x199
    x201 = x31*x42
    x202 = dtheta*x201
    x203 = x16*x85
    x204 = dphi*x203
    x205 = x45*x88
    x206 = x42*x88
    x207 = x17*x45
    x208 = x2*x207
    x209 = x2*x96
    x210 = x30*x5
    x211 = x30*x45
    x212 = dqR*x53
    x213 = 6*x13
    x214 = dtheta*x96
    x215 = x213*x214
    x216 = dqD*x5
    x217 = dtheta*x5
    x218 = x217*x43
    x219 = x217*x46
    x220 = x157*x45
    x221 = x48*x5
    x222 = x146*x5
    x223 = x222*x45
    x224 = IBy*x63
    x225 = x169*x3
    x226 = IWoff*dqR
    x227 = x226*x23
    x228 = x65*x9
    x229 = x13*x5
    x230 = x110*x169
    x231 = IBy*x68
    x232 = 2*x1
    x233 = x1*x66
    x234 = x24*x47
    x235 = x24*x67
    x236 = x232*x68
    x237 = 2*x27
    x238 = x237*x68
    x239 = 4*x49
    x240 = x239*x68
    x241 = x113*x86
    x242 = x8*x86
    x243 = x242*x68
    x244 = x121*x68*x81
    x245 = 4*x52
    x246 = x245*x68
    x247 = dqD*x74 + dtheta*x224 + x0*x5 - x0*x63 + x1*x227 + x1*x234 - x1*x235 + x1*x238 + x1*x240 + x1*x243 + x1*x244 + x1*x246 + x108*x228 + x11*x229 + x130*x232 - x157 + x160 - x17*x233 + x19*x216 + x19*x217 - x216*x38 - x222 + x225 - x226*x228 + x230*x45 - x230 + x231*x232 + x233*x40 - x236*x71 - x236*x72 - x236*x77 + x241*x68
    x248 = x13*x81
    x249 = x125*x16
    x250 = x121*x40
    x251 = x51*x8
    x252 = x13*x251
    x253 = x199*x32
    x254 = x203*x32
    x255 = 2*x35
    x256 = x199*x255
    x257 = x203*x255
    x258 = x45*x64
    x259 = x108*x65
    x260 = x45*x75
    x261 = x226*x65
    x262 = x185*x261
    x263 = x183*x261
    x264 = x38*x45
    x265 = x264*x68
    x266 = x13*x68
    x267 = x150*x68
    x268 = x127*x16
    x269 = dphi*x23
    x270 = x121*x17
    x271 = x66*x92
    x272 = dphi*x167
    x273 = dphi*x180
    x274 = dpsi*x224 + x13*x231 + x13*x272 + x13*x273 - x155*x71 - x155*x72 + x16*x272 + x16*x273 + x169*x22 - x17*x271 + x183*x259 + x185*x259 + x192*x269 - x194*x269 - x195*x269 + x196*x269 + x243 + x249*x269 + x250*x269 + x253*x269 + x254*x269 + x256*x269 + x257*x269 + x258 - x260 - x262 - x263 + x265 - x266*x71 - x266*x72 - x267 - x268*x269 - x269*x270 + x271*x40 + x43*x68 + x46*x68 - x64 + x68*x87 - x69 + x75 + x79 - x84 + x94
    x275 = IWoff - x17 + x19 - x38 + x40
    x276 = x2*x47
    x277 = x2*x67
    x278 = x139*x96
    x279 = -2*IWoff*dtheta*x13*x16*x45 - IWoff*dtheta*x183*x45 - IWoff*dtheta*x185*x45 + x13*x278 + x188 + x191
    x280 = IBy*dphi
    x281 = dphi*x110
    x282 = dphi*x2
    x283 = dphi*x181
    x284 = x2*x8
    x285 = x136*x31
    x286 = mB*x2
    x287 = x286*x51
    x288 = dphi*x121
    x289 = math.tanh(C2*dpsi)
    x290 = -C1*x289*x5 - IWoff*dphi*dpsi*x1*x16 - IWoff*dphi*dpsi*x9 + dphi*x12 + x237*x282 + x239*x282 + x282*x40
    x291 = dtheta**2
    x292 = x291*x35
    x293 = x292*x51
    x294 = x14*x32
    x295 = x291*x32
    x296 = x295*x51
    x297 = x269*x68
    x298 = x115*x176
    x299 = dphi*dqR
    x300 = dphi**2
    x301 = x300*x71
    x302 = x300*x72
    x303 = x38*x42
    x304 = x17*x42
    x305 = x121*x269
    x306 = mB*x297
    x307 = x30*x85
    x308 = x35*x85
    x309 = 3*x211*x226
    x310 = dphi*x309
    x311 = 2*x155
    x312 = x121*x299
    x313 = x45*x97
    x314 = x300*x313
    x315 = x291*x313
    x316 = x45*x99
    x317 = x300*x316
    x318 = x316*x85
    x319 = x291*x316
    x320 = x24*x303
    x321 = 2*x68
    x322 = x13*x30
    x323 = dphi*x5
    x324 = x323*x43
    x325 = x323*x46
    x326 = IWoff*dphi
    x327 = x326*x63
    x328 = x327*x45
    x329 = x323*x47
    x330 = x226*x5
    x331 = x30*x330
    x332 = x103*x5
    x333 = x108*x332
    x334 = dphi*x63
    x335 = x334*x71
    x336 = x334*x72
    x337 = x323*x67
    x338 = dphi*x74
    x339 = x338*x45
    x340 = x103*x330
    x341 = C1*C2*(x289**2 - 1)
    x342 = x1*x341
    x343 = x237*x323
    x344 = x239*x323
    x345 = x264*x323
    x346 = dqR*x74
    x347 = dphi*x229
    x348 = x347*x71
    x349 = x347*x72
    x350 = x150*x323
    x351 = dpsi*x167
    x352 = x226*x63
    x353 = dpsi*x23
    x354 = x249*x353
    x355 = x250*x353
    x356 = dpsi*x114
    x357 = x356*x8
    x358 = x353*x85
    x359 = x255*x358
    x360 = x242*x323
    x361 = x268*x353
    x362 = x270*x353
    x363 = x32*x358
    x364 = x13*x351
    x365 = dqR*x210
    x366 = x253*x353
    x367 = x105*x136
    x368 = dphi*x169
    x369 = x13*x357
    x370 = x256*x353
    x371 = x245*x323
    x372 = x19*x323
    x373 = x323*x38
    x374 = -x327 + x338 + x372 - x373
    x375 = x326*x5
    x376 = 2*x375
    x377 = dphi*x224 + x229*x280 + x376
    x378 = x17*x24
    x379 = x24*x38
    x380 = rW*x2
    x381 = IWspin*dphi
    x382 = x183*x65
    x383 = x185*x65
    x384 = dphi*x65*x92
    x385 = x103*x130 + x151*x269 + x153*x269 + x17*x269 - x17*x384 + x210*x22 - x22*x332 - x258*x30 + x260*x30 - x265*x30 + x267*x30 - x269*x303 - x269*x304 + x269*x38 - x326*x382 - x326*x383 + x381*x382 + x381*x383 + x384*x40
    x386 = dphi*x1
    x387 = dphi*x9
    x388 = x381*x9
    x389 = 2*dpsi
    x390 = dphi*x389
    x391 = dtheta*x386
    x392 = x210*x23*x300
    x393 = dtheta*x387
    x394 = dphi*dpsi
    x395 = x13*x394
    x396 = x1*x30
    x397 = x16*x390
    x398 = x124*x30
    x399 = IBx*x398
    x400 = 4*x130
    x401 = x16*x391
    x402 = x45*x85
    x403 = x31*x402
    x404 = x199*x394
    x405 = x212*x45
    x406 = x226*x386
    x407 = x101*x5
    x408 = dpsi*dqD
    x409 = dpsi*dtheta
    x410 = IWoff*x45
    x411 = x1*x300
    x412 = x368*x399
    x413 = dphi*x173*x398
    x414 = dpsi*x88
    x415 = dpsi*x139
    x416 = x16*x415
    x417 = 2*x66
    x418 = x5*x55
    x419 = x124*x47
    x420 = dqR*x419
    x421 = x1*x269
    x422 = x30*x421
    x423 = x176*x422
    x424 = x23*x323
    x425 = x167*x386
    x426 = x169*x66
    x427 = 3*x30
    x428 = x368*x398
    x429 = x199*x409
    x430 = x199*x414
    x431 = x421*x85
    x432 = x189*x386
    x433 = 4*dqR*x124*x5
    x434 = x1*x169
    x435 = x1*x376
    x436 = x169*x386
    x437 = dtheta*x63
    x438 = x160*x45
    x439 = x13*x217
    x440 = x150*x217
    x441 = x1*x134
    x442 = x169*x182
    x443 = x124*x251
    x444 = x1*x443
    x445 = dpsi*x115 + x31*x356 + x374
    x446 = x3*x45
    x447 = IWspin*x109
    x448 = -IWoff*dphi*x1*x23 - IWoff*dtheta*x103*x5 - IWspin*dphi*x1*x16*x65 - IWspin*dphi*x1*x23*x42 - IWspin*dphi*x65*x9 + x17*x386*x65 + x210*x3 + x228*x326 + x421*x67 + x447*x5
    x449 = 2*x52
    x450 = x1*x3
    x451 = dqR*x55
    x452 = x30**4
    x453 = tauR*x129
    x454 = dqR*x146
    x455 = x23**4
    x456 = dphi*x109
    x457 = dtheta*x108*x455
    x458 = 3*x45*x451
    x459 = 3*x161
    x460 = 6*x45
    x461 = dqR*x460
    x462 = x30*x66
    out = np.empty((5, 7), dtype=np.float64)
    out[0, 0] = dqD*x12 + dtheta*x12 - dtheta*x78 - rW*x6*x8 - x0*x10 + x0*x2 + x10*x11 + x100*x62 - x100*x70 + x11*x44 + x13*x15 - x15*x16 - 2*x16*x91 - x17*x28 + x18 + x2*x30*x60 + x2*x4 + x2*x48 - x2*x55 + x2*x89 - x20*x45 + x20 + x21*x45 - x21 + x24*x69 - x25 + x27*x28 + x27*x29 + x27*x62 - x27*x70 + x28*x40 + x28*x50 + x28*x52 + x28*x56 + x29*x40 + x29*x43 + x29*x46 + x29*x50 + x29*x61 + x29*x87 - x29*x96 - x34 - x37 + x39*x45 - x39 + x41*x45 - x41 + x45*x54 + x50*x62 - x50*x70 - x54 - x6*x7 - x62*x71 - x62*x72 + x62*x82 + x62*x98 + x64*x66 + x66*x84 + x70*x71 + x70*x72 - x70*x82 - x70*x98 - x71*x73 - x71*x93 - x72*x73 - x72*x93 - x76 - x80 - x83 + x91*x92 - x95
    out[0, 1] = IBx*x172 + IWspin*x172 - x102 + x103*x111 + x104 + x105*x107 + x107*x113 - x108*x109 - x111*x156 - x112 + x116*x68 - x118 - x120 + x121*x123 + x124*x131 + x126*x155 + x126*x68 - x128*x155 - x128*x68 - x129*x3*x68 + x13*x141 - x13*x142 - x13*x143 + x13*x144 - x13*x162 - x13*x163 + x133*x68 + x134*x135 + 3*x138 + x14*x170*x210*x31*x85 + x140*x150 + x140*x96 + x141*x16 - x142*x16 - x143*x16 + x144*x16 + x145*x146*x42 - x145*x147 - x145*x148 + x145*x149 - x145*x152 - x145*x154 - x157*x158 + x158*x160 + x159*x2 - x16*x162 - x16*x163 + x164*x166 + x167*x168 + x168*x180 + x169*x170*x85*x90 - x174 - x175 + x179 + 3*x181*x182 - x182*x215 + x183*x184 + x184*x185 - 3*x186 - x188*x189 - x189*x191 + x189*x208 - x189*x209 + x192*x193 - x193*x194 - x193*x195 + x193*x196 + x198*x200 + x198*x204 - x200*x202 + x200*x205 - x200*x206 - x202*x204 + x204*x205 - x204*x206 + x211*x212*x213
    out[0, 2] = IBx*dtheta*x13*x45*x5 + IBx*dtheta*x45*x63 + IBz*dtheta*x13*x42*x5 + IBz*dtheta*x42*x63 + IWoff*dtheta*x42*x5 + IWspin*dtheta*x13*x45*x5 + IWspin*dtheta*x45*x63 - x210*x60 - x216*x27 - x216*x50 - x216*x52 - x216*x56 - x217*x27 - x217*x50 - x217*x61 - x217*x87 - x218 - x219 - x220 - x221 - x223 - x247 - x5*x89
    out[0, 3] = x124*(2*IBz*x13*x30 + 2*IBz*x16*x30 + 2*IWoff*x13*x30 + 2*IWoff*x16*x30 - x16*x251 - x16*x81 - x192 - x196 - x248 - x249 - x250 - x252 - x253 - x254 - x256 - x257)
    out[0, 4] = IWoff*dqR*x23*x42 - x135*x82 - x227 - x234 - x27*x68 - x274 - x50*x68 - x61*x68
    out[0, 5] = x68*(-x27 - x275 - x50 - x52 - x56)
    out[0, 6] = x23*(IWoff*dtheta*x42 - x110 + x181 + x208 - x209 - x276 + x277 - x279 - x3 - x48 - x78)
    out[1, 0] = IBx*dphi*dpsi*x1*x16*x45 + IBx*dphi*dpsi*x45*x9 + 2*IBx*x1*x14*x23*x30*x5 + IBz*dphi*dpsi*x1*x16*x42 + IBz*dphi*dpsi*x42*x9 + IWoff*dphi*dpsi*x1*x42 + IWoff*dpsi*dqR*x1*x103 + IWoff*dpsi*dqR*x1*x16*x30*x45 + IWoff*dpsi*dqR*x30*x45*x9 + IWspin*dphi*dpsi*x1*x16*x45 + IWspin*dphi*dpsi*x45*x9 + 2*IWspin*x1*x14*x23*x30*x5 - dphi*x208 - dphi*x276 - dphi*x284*x86 + (1/2)*dpsi*dqD*lW*mB*rW*x23*x5 + dpsi*dqD*lW*mW*rW*x23*x5 + (1/2)*g_acc*lW*mB*x1*x23 + g_acc*lW*mW*x1*x23 + lW*mB*rW*x1*x14*x23*x5 + 2*lW*mW*rW*x1*x14*x23*x5 + (1/2)*mB*x1*x14*x23*x30*x5*x85 + 2*mW*x1*x14*x23*x30*x5*x85 - x10*x280 - x112 - x120 - x138 - x174 - x175 - x182*x209 - x186 - x245*x282 - x280*x44 - 2*x281 - x282*x43 - x282*x46 - x282*x87 - x283 - x285*x68 - x287*x288 - x290
    out[1, 1] = IBx*x13*x300*x42 + IBx*x14*x16*x45 + IBx*x16*x300*x42 + 2*IBz*dphi*dpsi*x13*x23*x30*x5 + 2*IBz*dphi*dpsi*x23*x30*x5 + 2*IBz*dphi*dpsi*x23*x30*x63 + IBz*x13*x300*x45 + IBz*x14*x16*x42 + IBz*x16*x300*x45 + 2*IWoff*dphi*dpsi*x13*x23*x30*x5 + 2*IWoff*dphi*dpsi*x23*x30*x5 + 2*IWoff*dphi*dpsi*x23*x30*x63 + 2*IWoff*dphi*dqR*x13*x30*x45 + IWoff*dphi*dqR*x13*x30 + 2*IWoff*dphi*dqR*x16*x30*x45 + IWoff*dphi*dqR*x16*x30 + IWoff*dpsi*dqR*x13*x5*x65 + 3*IWoff*dpsi*dqR*x23*x42*x5 + IWoff*dpsi*dqR*x63*x65 + IWoff*x13*x300*x45 + IWoff*x14*x16*x42 + IWoff*x16*x300*x45 + IWspin*dphi*dqR*x103*x13 + IWspin*dphi*dqR*x103*x16 + 6*IWspin*dphi*dqR*x13*x16*x30*x45 + 3*IWspin*dphi*dqR*x183*x30*x45 + 3*IWspin*dphi*dqR*x185*x30*x45 + 2*IWspin*dpsi*dqR*x13*x23*x42*x5 + 2*IWspin*dpsi*dqR*x23*x42*x63 + IWspin*x13*x300*x42 + IWspin*x14*x16*x45 + IWspin*x16*x300*x42 - dphi*x298 + (1/2)*dpsi*dqD*lW*mB*rW*x1*x30 + dpsi*dqD*lW*mW*rW*x1*x30 + (1/2)*lW*mB*rW*x13*x14*x30 + (1/2)*lW*mB*rW*x13*x30*x300 + (1/2)*lW*mB*rW*x16*x30*x300 + lW*mW*rW*x13*x14*x30 + lW*mW*rW*x13*x30*x300 + lW*mW*rW*x16*x30*x300 + (1/4)*mB*x13*x14*x42*x85 + (1/4)*mB*x13*x291*x42*x85 + (1/4)*mB*x13*x300*x42*x85 + (1/4)*mB*x14*x45*x85 + (1/4)*mB*x16*x291*x42*x85 + (1/4)*mB*x16*x300*x42*x85 + (1/4)*mB*x291*x45*x85 + mW*x13*x14*x42*x85 + mW*x13*x291*x42*x85 + mW*x13*x300*x42*x85 + mW*x14*x45*x85 + mW*x16*x291*x42*x85 + mW*x16*x300*x42*x85 + mW*x291*x45*x85 - x100*x14 - x100*x291 - x103*x17*x299 - x103*x299*x38 - x125*x155*x269 - x125*x297 - x13*x301 - x13*x302 - x13*x314 - x13*x315 - x131*x269 - x14*x98 - x145*x167*x68 - x150*x300 - x150*x312 - x16*x301 - x16*x302 - x16*x314 - x16*x315 - x183*x310 - x185*x310 - x192*x297 - x196*x297 - x199*x317 - x199*x319 - x203*x317 - x203*x319 - 6*x207*x299*x322 - x235*x311 - x25 - x29*x52 - x29*x56 - x291*x98 - x293 - x294*x51 - x296 - 4*x297*x308 - x300*x303 - x300*x304 - x300*x96 - x305*x75 - x306*x307 - x312*x96 - x313*x62 - x318*x62 - x320*x321 - x34 - x37 - x41*x42 - x43*x70 - x46*x70 - x76 - 3*x80 - x83 - x91 - x95
    out[1, 2] = x105*x132 + x113*x132 - x113*x136 + x150*x365 + x211*x346 - x211*x352 - x264*x365 + x323*x87 + x324 + x325 + x328 + x329 + x331 + x333 - x335 - x336 - x337 - x339 - x340 - x342 + x343 + x344 + x345 - x348 - x349 - x350 - x351 - x354 - x355 - x357 - x359 + x360 + x361 + x362 - x363 + x364 + x366 - x367 + x368*x82 + x369 + x370 + x371 + x374 + x377
    out[1, 3] = x151*x24 + x153*x24 + x238 - x24*x304 + x240 + x244 + x246 + x274 - x320 + x378 + x379
    out[1, 4] = x106*((1/2)*dtheta*lW*mB*x13*x30 + (1/2)*dtheta*lW*mB*x16*x30 + 2*dtheta*lW*mW*x13*x30 + 2*dtheta*lW*mW*x16*x30 - dtheta*x33 - mW*x380 - rW*x88 - x139*x36 - x31*x380 - x58)
    out[1, 5] = x106*x380*(mW + x31)
    out[1, 6] = x385
    out[2, 0] = 2*IBx*dphi*dpsi*x13*x45 + IBx*dphi*dtheta*x1*x42 + IBx*x23*x30*x300*x5 + 2*IBy*dphi*dpsi*x16 + 2*IBz*dphi*dpsi*x13*x42 + IBz*dphi*dtheta*x1*x45 + 4*IBz*dpsi*dtheta*x1*x23*x30*x5 - IBz*x392 + 2*IWoff*dphi*dpsi*x13 + 2*IWoff*dphi*dpsi*x16*x45 + IWoff*dphi*dqD*x1*x16 + IWoff*dphi*dqD*x9 + IWoff*dphi*dqR*x23*x5 + IWoff*dphi*dtheta*x1*x16*x45 + IWoff*dphi*dtheta*x1*x16 + IWoff*dphi*dtheta*x45*x9 + IWoff*dphi*dtheta*x9 + 4*IWoff*dpsi*dtheta*x1*x23*x30*x5 + IWoff*dqR*dtheta*x1*x30*x45 + IWoff*dqR*dtheta*x1*x30 - IWoff*x392 + 2*IWspin*dphi*dpsi*x13*x45 + 2*IWspin*dphi*dpsi*x16 + IWspin*dphi*dqR*x13*x5*x65 + IWspin*dphi*dqR*x23*x42*x5 + IWspin*dphi*dqR*x63*x65 + IWspin*dphi*dtheta*x1*x42 + IWspin*dqR*dtheta*x1*x103 + 2*IWspin*dqR*dtheta*x1*x16*x30*x45 + 2*IWspin*dqR*dtheta*x30*x45*x9 + IWspin*x23*x30*x300*x5 + 2*dphi*dpsi*lW*mB*rW*x16*x30 + 4*dphi*dpsi*lW*mW*rW*x16*x30 + 2*dphi*dpsi*mB*x16*x26 + (1/2)*dphi*dpsi*mB*x16*x42*x85 + 4*dphi*dpsi*mW*x16*x26 + 2*dphi*dpsi*mW*x16*x42*x85 - dqD*x386*x40 - dqD*x388 - dtheta*x388 + (1/2)*lW*mB*rW*x23*x300*x5 + lW*mW*rW*x23*x300*x5 + (1/4)*mB*x23*x30*x300*x5*x85 + mW*x23*x30*x300*x5*x85 - x0*x386 - x1*x104 - x1*x121*x405 - x1*x176*x399 - x1*x179 - x1*x398*x400 - x11*x16*x386 - x11*x387 - x114*x291*x31*x5 - x115*x291*x5 - x118*x9 - x121*x248*x394 - x123*x396 - x13*x280*x389 - x134*x236 - x166*x170*x68 - x17*x390 - x176*x367 - x19*x390 - x201*x404 - x235*x323 - x237*x395 - x239*x395 - x245*x395 - x261*x334 - x264*x390 - x373*x66 - x386*x4 - x386*x402*x88 - x386*x55 - x390*x96 - x391*x40 - x391*x403 - x391*x96 - x393*x71 - x393*x72 - x393*x77 - x397*x71 - x397*x72 - x401*x71 - x401*x72 - x404*x42*x8
    out[2, 1] = -IBx*x423 + IBz*x423 - dpsi*x278 - dpsi*x322*x59 + dpsi*x89 + dtheta*x19*x426 - mB*x307*x421*x68 - x1*x293 - x1*x296 + x1*x300*x43 + x1*x300*x46 - x1*x301 - x1*x302 + x100*x411 - x103*x406 + 4*x110*x30*x424 + x119*x386 + x122*x387*x427 + x126*x334 - x128*x334 + x13*x412 - x13*x413 - x13*x415*x52 - x146*x426 + x148*x389 - x149*x389 - x151*x433 + x154*x389 + x156*x406 + 4*x157*x24*x42 - x157*x305 - x157*x417 - x159*x386 + x160*x305 + x160*x417 + x166*x424 + x169*x381*x398 - x176*x35*x431 + 4*x178*x323 + x19*x428 + x197*x429 - x201*x429 - x207*x432 - x217*x259 - x225*x269*x30 + x23*x407 - 5*x24*x418 - x298*x386 + x30*x406 + x303*x433 - x309*x387 - x313*x411 - x318*x411 - x321*x425 - x38*x428 - x400*x422 - x402*x414 - x403*x409 + x407*x65 + x408*x52 + x408*x56 + x409*x52 + x409*x56 + x409*x87 + x410*x411 + x411*x47 + x411*x52 + x411*x56 - x411*x67 - x411*x77 + x411*x98 + x412 - x413 + x416*x43 + x416*x46 - x416*x71 - x416*x72 - x42*x430 + 5*x420*x5 - 4*x420*x63 + x430*x45 + x432*x96
    out[2, 2] = x1*x343 + x1*x344 + x1*x360 + x1*x371 + x116 + x124*x249 + x124*x250 - x124*x252 - x124*x253 - x124*x256 - x124*x268 - x124*x270 - x13*x134 + x133 + x137 + x177*x255 + x177*x32 + x241*x323 + x280*x434 + x285 - x341 + x381*x434 + x435*x45 - x435 - x436*x71 - x436*x72 - x436*x77 + x436*x82
    out[2, 3] = IWspin*x121*x421 - x121*x170*x326 + x125*x421 - x127*x421 + x180*x386 + x205*x5*x85 + x217*x403 - x218 - x219 - x220 - x221 - x223 + x232*x269*x308 + x247 + x32*x431 + x418 + x425 + x437*x71 + x437*x72 + x438 + x439*x71 + x439*x72 + x440
    out[2, 4] = x122*x210 - x150*x442 - x156*x346 + x156*x352 + x264*x442 + x323*x402*x8 + x323*x403 - x324 - x325 - x328 - x329 - x331*x45 - x331 - x333 + x335 + x336 + x337 + x339 + x340 - x345 + x348 + x349 + x350 + x354 + x355 + x359 - x361 - x362 + x363 - x364 - x366 - x369 - x370 + x377 - x441 - x444 + x445
    out[2, 5] = x375 + x445
    out[2, 6] = 2*IWoff*dtheta*x13*x30*x45*x5 + 2*IWoff*dtheta*x30*x45*x63 + IWspin*dtheta*x30*x45*x5 - dtheta*x150*x169*x30 - x121*x438 - x210*x446 - x448
    out[3, 0] = -x134*x68 - x161*x287 - x281 - x282*x449 - x290 - x443*x68
    out[3, 1] = -x51*(x165*x2 + x255*x29 + x292 + x294 + x295 + x297*x8 + x306 + x90)
    out[3, 2] = IWoff*dphi*x5 + IWspin*dphi*x13*x5 + IWspin*dphi*x63 + dphi*lW*mB*rW*x30*x5 + 2*dphi*lW*mW*rW*x30*x5 + 2*dphi*mB*x26*x5 + 4*dphi*mW*x26*x5 - x327 - x342 - x351 - x357 - x373 - x441 - x444
    out[3, 3] = x68*(x237 + x239 + x275 + x449 + x82)
    out[3, 4] = -x114*(x284 + x286 + x57 + x88)
    out[3, 5] = 0
    out[3, 6] = 0
    out[4, 0] = dpsi*(dtheta*x30*x77*x9 - x1*x211*x53 + x1*x447 - x103*x450 + x214*x396 + x23*x329 - x23*x337 + x23*x375 - x30*x446*x9 + x30*x450 - x327*x65 + x338*x65 + x372*x65 - x373*x65)
    out[4, 1] = 2*IWoff*dphi*dpsi*x1*x30*x45 + IWoff*dphi*dpsi*x1*x30 + IWoff*dphi*dtheta*x103*x13 + IWoff*dphi*dtheta*x103*x16 + 6*IWoff*dphi*dtheta*x13*x16*x30*x45 + 3*IWoff*dphi*dtheta*x183*x30*x45 + 3*IWoff*dphi*dtheta*x185*x30*x45 + 2*IWoff*dpsi*dtheta*x13*x23*x42*x5 + 2*IWoff*dpsi*dtheta*x23*x42*x63 + IWoff*dpsi*dtheta*x23*x5 + 2*IWoff*dqR*dtheta*x13*x16*x455 + 6*IWoff*dqR*dtheta*x13*x42*x45 + IWoff*dqR*dtheta*x13*x42 + 6*IWoff*dqR*dtheta*x16*x42*x45 + IWoff*dqR*dtheta*x16*x42 + IWoff*dqR*dtheta*x183*x455 + IWoff*dqR*dtheta*x185*x455 + IWoff*dqR*dtheta*x45 + IWoff*dqR*dtheta*x452 + IWspin*dphi*dpsi*x1*x103 + 3*IWspin*dphi*dpsi*x1*x16*x30*x45 + 3*IWspin*dphi*dpsi*x30*x45*x9 + 2*IWspin*dphi*dtheta*x13*x30*x45 + 2*IWspin*dphi*dtheta*x16*x30*x45 + IWspin*dpsi*dtheta*x13*x5*x65 + 3*IWspin*dpsi*dtheta*x23*x42*x5 + IWspin*dpsi*dtheta*x63*x65 + 6*IWspin*dqR*dtheta*x13*x16*x42*x45 + IWspin*dqR*dtheta*x13*x452 + IWspin*dqR*dtheta*x13*x455 + IWspin*dqR*dtheta*x16*x452 + IWspin*dqR*dtheta*x16*x455 + 3*IWspin*dqR*dtheta*x183*x42*x45 + 3*IWspin*dqR*dtheta*x185*x42*x45 + 3*IWspin*dqR*dtheta*x42*x45 - dpsi*x157*x65 - dqR*x13*x139*x40*x455 - dqR*x13*x149*x460 - dtheta*x108*x452 + 2*tauR*x23*x30 - x103*x281 - x121*x282*x77 - x13*x453 - x146*x161 - x146*x65*x68 - x147*x288 - x148*x288 - 2*x151*x193 - x152*x461 - x154*x461 - x16*x453 - x161*x215 - x161*x53 - 3*x164*x55 - x183*x457 - x183*x458 - x185*x457 - x185*x458 - x188*x459 - x19*x456 - x191*x459 - x208*x459 - x212*x452 - x212*x455 - x283*x427 - x311*x419 - x40*x456 - x405 - x45*x454 - x451 - x452*x454 - x454*x455 - x458
    out[4, 2] = IWoff*dtheta*x13*x30*x45*x5 + IWoff*dtheta*x30*x45*x63 - x30*x438 - x30*x440 - x448
    out[4, 3] = x23*(IWoff*dtheta*x13*x42 + IWoff*dtheta*x16*x42 + x110 - x146 - x152 - x154 - x181 - x208 + x209 + x276 - x277 - x279 - x53 + x78)
    out[4, 4] = IWoff*dqR*x103*x23 + IWoff*dqR*x13*x23*x30 + IWoff*dqR*x13*x30*x65 + IWoff*dqR*x16*x23*x30 + IWoff*dqR*x16*x30*x65 + IWspin*dqR*x103*x13*x23 + IWspin*dqR*x103*x16*x23 + 2*IWspin*dqR*x13*x16*x30*x65 + IWspin*dqR*x183*x30*x65 + IWspin*dqR*x185*x30*x65 - x103*x378 - x103*x379 - x119*x23 - x13*x270*x66 - x19*x462 - x227*x30 - x262*x30 - x263*x30 - x385 - x40*x462
    out[4, 5] = 0
    out[4, 6] = x398*(-IWoff - x150 + x151 + x153 + x17 - x183*x410 - x185*x410 + x187 + x190 - x207*x92 + x207 + x264 - x303 - x304 + x38 - x47 + x67 + x92*x96 - x96)
    return out


@njit(cache=True)
def bias_jac_input(phi, theta, p):
    """d(bias_vector)/d(tauD, tauR)."""
    x0 = math.sin(phi)**2
    x1 = math.cos(phi)**2
    x2 = math.sin(theta)**2
    out = np.empty((5, 2), dtype=np.float64)
    out[0, 0] = 0
    out[0, 1] = 0
    out[1, 0] = 0
    out[1, 1] = 0
    out[2, 0] = 0
    out[2, 1] = 0
    out[3, 0] = -x0 - x1
    out[3, 1] = 0
    out[4, 0] = 0
    out[4, 1] = -x0*x2 - x1*x2 - math.cos(theta)**2
    return out


@njit(cache=True)
def eom_jac_params(phi, theta, dpsi, dphi, dtheta, dqD, dqR, ddphi, ddtheta, ddpsi, ddqD, ddqR, tauD, tauR, p):
    """d(M @ accel + h)/d(p) at fixed accel; columns follow PARAM_NAMES."""
    mW = p[0]; mB = p[1]; rW = p[7]; lW = p[8]; C1 = p[9]; C2 = p[10]
    g_acc = G_ACC
    x0 = math.sin(phi)
    x1 = g_acc*x0
    x2 = rW*x1
    x3 = math.cos(theta)
    x4 = x1*x3
    x5 = lW*x4
    x6 = math.cos(phi)
    x7 = math.sin(theta)
    x8 = x6*x7
    x9 = ddpsi*x8
    x10 = lW*rW
    x11 = x10*x9
    x12 = rW**2
    x13 = dpsi*x6
    x14 = dqD*x13
    x15 = x12*x14
    x16 = dtheta*x13
    x17 = x12*x16
    x18 = lW*x3
    x19 = rW*x18
    x20 = x14*x19
    x21 = x0**2
    x22 = x6**2
    x23 = x16*x19
    x24 = lW**2
    x25 = x3*x9
    x26 = x24*x25
    x27 = dpsi**2
    x28 = x0*x27*x6
    x29 = x12*x28
    x30 = dtheta*x21
    x31 = dphi*x30
    x32 = lW*x7
    x33 = rW*x32
    x34 = x31*x33
    x35 = dtheta*x22
    x36 = 2*dphi
    x37 = x35*x36
    x38 = x3**2
    x39 = x24*x38
    x40 = 2*x16
    x41 = x19*x28
    x42 = x28*x39
    x43 = x3*x7
    x44 = x24*x43
    x45 = 2*x31
    x46 = dphi*x35
    x47 = (1/2)*x39
    x48 = (1/2)*x44
    x49 = 2*ddphi
    x50 = ddqR*x3
    x51 = dqR*dtheta
    x52 = x51*x7
    x53 = dpsi*x0
    x54 = dqR*x7
    x55 = x53*x54
    x56 = ddphi*x38
    x57 = x3**3
    x58 = x6**3
    x59 = dpsi*x58
    x60 = dtheta*x59
    x61 = x0**3
    x62 = x7**3
    x63 = dqR*x62
    x64 = x61*x63
    x65 = x16*x38
    x66 = x13*x30
    x67 = x6**4
    x68 = x51*x62
    x69 = x67*x68
    x70 = x0**4
    x71 = x68*x70
    x72 = x7**2
    x73 = x50*x72
    x74 = x60*x72
    x75 = x28*x72
    x76 = x22*x53
    x77 = x66*x72
    x78 = 2*x21
    x79 = x35*x78
    x80 = x35*x43
    x81 = x36*x80
    x82 = x43*x45
    x83 = x25 + x81 + x82
    x84 = -ddqR*x57 + dpsi*x64 + dqD*x59 + x14*x21 - x21*x73 - x22*x73 + x28 + x38*x52 + x38*x55 - x56 + x60 + x63*x76 + x63*x79 + x65 + x66 + x69 + x71 - x74 - x75 - x77 + x83
    x85 = ddphi*x72
    x86 = x28*x38
    x87 = mB*x1
    x88 = 2*mW
    x89 = mW*x9
    x90 = mB*rW
    x91 = 2*x90
    x92 = 4*mW
    x93 = rW*x92
    x94 = (1/2)*mB
    x95 = lW*x94
    x96 = mW*x18
    x97 = x18*x94
    x98 = mB*x18
    x99 = (3/2)*x16
    x100 = 3*x16
    x101 = mB*x32
    x102 = x32*x88
    x103 = rW*x94
    x104 = mW*x3
    x105 = rW*x104
    x106 = mB*x3
    x107 = (1/2)*x106
    x108 = rW*x107
    x109 = rW*x106
    x110 = 2*ddpsi
    x111 = x31*x7
    x112 = dphi*x7
    x113 = x112*x35
    x114 = lW*mB
    x115 = mW*x7
    x116 = rW*x115
    x117 = lW*x92
    x118 = x3*x88
    x119 = x106*x32
    x120 = x3*x92
    x121 = x3*x35
    x122 = lW*x88
    x123 = ddqD*x12
    x124 = 2*x123
    x125 = ddtheta*x12
    x126 = 2*x125
    x127 = ddqD*rW
    x128 = x127*x18
    x129 = ddtheta*rW
    x130 = 2*x129
    x131 = x130*x18
    x132 = x0*x110
    x133 = g_acc*x8
    x134 = lW*x133
    x135 = ddtheta*x39
    x136 = dphi*x13
    x137 = 4*x136
    x138 = x27*x32
    x139 = rW*x138
    x140 = dtheta**2
    x141 = x140*x32
    x142 = rW*x141
    x143 = rW*x132
    x144 = dqD*rW
    x145 = x32*x53
    x146 = x144*x145
    x147 = dtheta*rW
    x148 = x145*x147
    x149 = ddpsi*x0
    x150 = x24*x72
    x151 = x149*x150
    x152 = x149*x39
    x153 = x27*x44
    x154 = x140*x44
    x155 = rW*x21
    x156 = dphi**2
    x157 = x156*x32
    x158 = x155*x157
    x159 = rW*x22
    x160 = x157*x159
    x161 = x139*x21
    x162 = ddtheta*x21
    x163 = x150*x162
    x164 = ddtheta*x22
    x165 = x150*x164
    x166 = 2*x136
    x167 = x156*x44
    x168 = x167*x21
    x169 = x167*x22
    x170 = x153*x21
    x171 = x154*x21
    x172 = x154*x22
    x173 = x129*x18
    x174 = rW*x149
    x175 = (1/2)*x142
    x176 = (1/4)*x135
    x177 = ddqD*x22
    x178 = dphi*x59
    x179 = x136*x21
    x180 = 2*x164
    x181 = ddpsi*x61 + ddtheta*x67 + ddtheta*x70 + x149*x22 + x178 + x179 + x180*x21
    x182 = ddqD*x67 + ddqD*x70 + x177*x78 + x181
    x183 = -ddqD*x21 - ddqD*x22 + x182
    x184 = dphi*x63
    x185 = dqR*x13
    x186 = dphi*x54
    x187 = x3*x72
    x188 = dqR*x187
    x189 = x184*x22
    x190 = x136*x38
    x191 = x22*x43
    x192 = x156*x43
    x193 = x156*x191 - x191*x27 + x192*x21
    x194 = -x178*x72 - x179*x72 + x190 + x193
    x195 = x184*x67 + x184*x70 + x185*x21*x3*x72 + x185*x57 + x186*x21*x38 + x186*x22*x38 + x188*x59 + x189*x78 + x194
    x196 = ddqD*x18
    x197 = ddtheta*x3
    x198 = lW*x197
    x199 = mB*x198
    x200 = x149*x18
    x201 = mW*x157
    x202 = mW*x138
    x203 = x157*x94
    x204 = (1/2)*x138
    x205 = mB*x204
    x206 = dqD*mW
    x207 = dqD*x94
    x208 = dtheta*x53
    x209 = x208*x32
    x210 = x136*x18
    x211 = 2*x127
    x212 = mB*x130
    x213 = x129*x92
    x214 = mW*x141
    x215 = (1/2)*x141
    x216 = mB*x215
    x217 = mW*rW
    x218 = 8*x217
    x219 = mB*x143 + mB*x211 + x127*x92 + x136*x218 + x137*x90 + x174*x92 - x202 - x205 + x212 + x213 - x214 - x216
    x220 = x106*x129
    x221 = x104*x130
    x222 = ddtheta*x38
    x223 = x7*x94
    x224 = x223*x27
    x225 = x115*x27
    x226 = rW*x225
    x227 = x140*x223
    x228 = rW*x227
    x229 = x115*x140
    x230 = rW*x229
    x231 = x115*x53
    x232 = x3*x93
    x233 = x223*x53
    x234 = x149*x95
    x235 = lW*mW
    x236 = x235*x72
    x237 = x235*x38
    x238 = x106*x204
    x239 = x118*x138
    x240 = x106*x215
    x241 = x118*x141
    x242 = x115*x156
    x243 = x72*x95
    x244 = x156*x223
    x245 = x107*x157
    x246 = x118*x157
    x247 = math.tanh(C2*dpsi)
    x248 = x0*x247
    x249 = C1*(x247**2 - 1)
    x250 = -x249*x53
    x251 = dpsi*x32
    x252 = x144*x251
    x253 = dtheta*x251
    x254 = rW*x253
    x255 = ddqD*x0
    x256 = x19*x255
    x257 = ddpsi*x72
    x258 = x24*x257
    x259 = ddphi*x8
    x260 = x10*x259
    x261 = x110*x21
    x262 = rW*x0
    x263 = x157*x262
    x264 = ddtheta*x0
    x265 = x150*x264
    x266 = x53*x6
    x267 = dphi*x266
    x268 = 4*x267
    x269 = 2*dpsi
    x270 = dtheta*x44
    x271 = ddphi*x3*x8
    x272 = x24*x271
    x273 = x251*x30
    x274 = rW*x273
    x275 = ddpsi*x21
    x276 = x275*x39
    x277 = dphi*dtheta
    x278 = x277*x6
    x279 = x0*x167
    x280 = x266*x36
    x281 = x30*x44
    x282 = (1/2)*dpsi
    x283 = x51*x6
    x284 = x283*x3
    x285 = dphi*dqD
    x286 = x58*x62
    x287 = ddqR*x38
    x288 = x6*x62
    x289 = 2*x30
    x290 = x277*x58
    x291 = x31*x6
    x292 = ddtheta*x61 + x0*x164 + x275 + x280 + x290 + x291
    x293 = x0*x192
    x294 = x269*x80
    x295 = x22*x257 - x271 - x278*x38 - x280*x72 + x290*x72 + x291*x72 + x293 + x294
    x296 = ddqD*x61 - ddqR*x21*x288 - ddqR*x286 + dphi*x64 + x0*x177 + x0*x186*x38 + x0*x189 - 2*x187*x51*x58 - x188*x289*x6 + x21*x285*x6 - x283*x57 + x284*x72 + x285*x58 - x287*x8 + x292 + x295
    x297 = ddpsi*x38
    x298 = x278*x72
    x299 = 2*x264
    x300 = dpsi*x115
    x301 = dpsi*x223
    x302 = x38*x95
    x303 = x267*x38
    x304 = x3*x30
    x305 = ddqR*x7**4
    x306 = dphi*x62
    x307 = x3*x85
    x308 = x277*x62
    x309 = x54*x57
    x310 = x121*x63
    x311 = x287*x72
    x312 = ddphi*x57 - ddpsi*x286 + ddqR*x3**4 + dpsi*x306*x61 - x111*x38 + x112*x38*x53 - x113*x38 - x16*x57 + x21*x307 + x22*x305*x78 + x22*x307 + 2*x22*x311 - x275*x288 - x297*x8 + x3*x69 + x3*x71 - x3*x74 - x3*x77 + x30*x309 - x304*x63 + x305*x67 + x305*x70 + x306*x76 - x306*x79 - x308*x67 - x308*x70 + x309*x35 + x310*x78 - x310 + x311*x78 - x52*x57
    out = np.empty((5, 11), dtype=np.float64)
    out[0, 0] = 2*ddphi*lW*rW*x21*x3 + 2*ddphi*lW*rW*x22*x3 + 2*ddphi*x12*x21 + 2*ddphi*x12*x22 + ddphi*x21*x24*x38 + ddphi*x22*x24*x38 - x11 - 2*x15 - 2*x17 - 2*x2 - x20 - 3*x23 - x26 - 2*x29 - x33*x37 - 2*x34 - x37*x44 - x39*x40 - 2*x41 - x42 - x44*x45 - x5
    out[0, 1] = ddphi*lW*rW*x21*x3 + ddphi*lW*rW*x22*x3 + ddphi*x12*x21 + ddphi*x12*x22 + (1/4)*ddphi*x21*x24*x38 + (1/4)*ddphi*x22*x24*x38 - 1/2*x11 - x15 - x16*x47 - x17 - x2 - 1/2*x20 - 3/2*x23 - 1/4*x26 - x29 - x31*x48 - x33*x46 - x34 - x41 - 1/4*x42 - x46*x48 - 1/2*x5
    out[0, 2] = -x14 - x40 + x49 + x50 - x52 - x55 + x84
    out[0, 3] = -x84
    out[0, 4] = -x25 + x56 - x65 + x74 + x75 + x77 - x81 - x82
    out[0, 5] = -x13*(x30 + x35 + x53)
    out[0, 6] = -x16*x72 + x38*x60 + x38*x66 + x83 + x85 + x86
    out[0, 7] = ddphi*lW*mB*x21*x3 + ddphi*lW*mB*x22*x3 + 2*ddphi*lW*mW*x21*x3 + 2*ddphi*lW*mW*x22*x3 + 2*ddphi*mB*rW*x21 + 2*ddphi*mB*rW*x22 + 4*ddphi*mW*rW*x21 + 4*ddphi*mW*rW*x22 - lW*x89 - x1*x88 - x100*x96 - x101*x31 - x101*x46 - x102*x31 - x102*x46 - x14*x91 - x14*x93 - x14*x96 - x14*x97 - x16*x93 - x18*x28*x88 - x28*x91 - x28*x93 - x28*x98 - x40*x90 - x87 - x9*x95 - x98*x99
    out[0, 8] = (1/2)*ddphi*lW*mB*x21*x38 + (1/2)*ddphi*lW*mB*x22*x38 + 2*ddphi*lW*mW*x21*x38 + 2*ddphi*lW*mW*x22*x38 + ddphi*mB*rW*x21*x3 + ddphi*mB*rW*x22*x3 + 2*ddphi*mW*rW*x21*x3 + 2*ddphi*mW*rW*x22*x3 - dphi*x121*x32*x92 - mW*x4 - rW*x118*x28 - rW*x89 - x100*x105 - x103*x9 - x105*x14 - x108*x14 - x109*x28 - x109*x99 - x110*x8*x96 - x111*x90 - x113*x90 - x114*x65 - x116*x37 - x116*x45 - x117*x65 - x119*x31 - x119*x46 - x120*x31*x32 - x122*x86 - x25*x95 - 1/2*x3*x87 - x86*x95
    out[0, 9] = 0
    out[0, 10] = 0
    out[1, 0] = x12*x132 + x12*x137 + x124 + x126 + x128 + x131 - x134 + x135 + x137*x19 - x139 - x142 + x143*x18 + x146 - x148 + x151 + x152 - x153 - x154 + x158 + x160 + x161 + x163 + x165 + x166*x39 + x168 + x169 + x170 + x171 + x172
    out[1, 1] = x12*x149 + x12*x166 + x123 + x125 + (1/2)*x128 - 1/2*x134 + x136*x47 - 1/2*x139 + (1/2)*x146 - 1/2*x148 + (1/4)*x151 + (1/4)*x152 - 1/4*x153 - 1/4*x154 + (1/2)*x158 + (1/2)*x160 + (1/2)*x161 + (1/4)*x163 + (1/4)*x165 + x166*x19 + (1/4)*x168 + (1/4)*x169 + (1/4)*x170 + (1/4)*x171 + (1/4)*x172 + x173 + x174*x18 - x175 + x176
    out[1, 2] = 2*ddpsi*x0 + 2*ddtheta*x21 + 2*ddtheta*x22 + 2*dphi*dpsi*x6 + dphi*dqR*x21*x7 + dphi*dqR*x22*x7 + dpsi*dqR*x3*x6 - x183 - x195
    out[1, 3] = x182 + x195
    out[1, 4] = x194
    out[1, 5] = x181
    out[1, 6] = dphi*dpsi*x6*x72 - x178*x38 - x190*x21 - x193
    out[1, 7] = mB*x200 + mW*x196 - mW*x209 + x132*x96 + x145*x206 + x145*x207 + x166*x98 + x196*x94 + x198*x88 + x199 + x201*x21 + x201*x22 + x202*x21 + x203*x21 + x203*x22 + x205*x21 - x209*x94 + x210*x92 + x219
    out[1, 8] = -mW*x133 - rW*x224 + x104*x127 + x104*x143 + x106*x174 + x107*x127 + x109*x166 + x114*x190 + x117*x190 + x122*x222 + x132*x236 + x132*x237 - x133*x94 + x136*x232 + x144*x231 + x144*x233 - x147*x231 - x147*x233 + x155*x224 + x155*x242 + x155*x244 + x159*x242 + x159*x244 + 2*x162*x236 + x162*x243 + x164*x243 + x180*x236 + x21*x226 + x21*x238 + x21*x239 + x21*x240 + x21*x241 + x21*x245 + x21*x246 + x22*x240 + x22*x241 + x22*x245 + x22*x246 + x220 + x221 + x222*x95 - x226 - x228 - x230 + x234*x38 + x234*x72 - x238 - x239 - x240 - x241
    out[1, 9] = x248
    out[1, 10] = x250
    out[2, 0] = x0*x124 + x0*x126 + x0*x131 + x0*x135 - x0*x142 + x12*x261 + x12*x268 + 2*x150*x278 + x19*x261 + x19*x268 + x252 + x254 + x256 + x258 - x260 + x263 + x265 + x269*x270 - x269*x281 - x272 - 2*x274 + x276 + x279 + x280*x39
    out[2, 1] = x0*x123 + x0*x125 + x0*x173 - x0*x175 + x0*x176 + x12*x275 + x12*x280 + (1/2)*x150*x278 + x19*x275 + x19*x280 + (1/2)*x252 + (1/2)*x254 + (1/2)*x256 + (1/4)*x258 - 1/2*x260 + (1/2)*x263 + (1/4)*x265 + x267*x47 + x270*x282 - 1/4*x272 - x274 + (1/4)*x276 + (1/4)*x279 - x281*x282
    out[2, 2] = 2*ddpsi + ddqD*x0 - ddqR*x8 + 2*ddtheta*x0 + dphi*dqD*x6 + dphi*dqR*x0*x7 + 2*dphi*dtheta*x6 - x284 - x296
    out[2, 3] = x296
    out[2, 4] = x295
    out[2, 5] = x292
    out[2, 6] = x22*x297 + x271 - x280*x38 + x290*x38 + x291*x38 - x293 - x294 - x298
    out[2, 7] = -mB*x273 + mW*x253 + x0*x201 + x0*x203 + x0*x212 + x0*x213 - x0*x214 - x0*x216 + x18*x267*x92 + x206*x251 + x207*x251 + x218*x267 - x235*x259 + x253*x94 + x255*x91 + x255*x93 + x255*x96 + x255*x97 - x259*x95 + x261*x90 + x261*x96 + x264*x98 + x268*x90 - x273*x88 + x275*x93 + x275*x98 + x280*x98 + x299*x96
    out[2, 8] = -dpsi*x30*x7*x90 - rW*x289*x300 + x0*x220 + x0*x221 - x0*x228 - x0*x230 + x0*x245 + x0*x246 - x103*x259 + x105*x255 + x105*x261 + x106*x253 - x106*x273 + x108*x255 + x109*x275 + x109*x280 + x110*x236 + x114*x298 + x114*x303 + x117*x298 + x117*x303 + x120*x253 + x144*x300 + x144*x301 + x147*x300 + x147*x301 - x217*x259 + x232*x267 + x236*x299 + x237*x261 + x237*x299 + x242*x262 + x243*x264 + x244*x262 - x251*x304*x92 + x257*x95 + x264*x302 - x271*x95 + x275*x302 - x49*x8*x96
    out[2, 9] = x247
    out[2, 10] = -dpsi*x249
    out[3, 0] = rW*(rW*x137 + x130 - x138 - x141 + x143 + x166*x18 + x198 + x200 - 2*x209 + x211)
    out[3, 1] = rW*(rW*x166 + x127 + x129 + x174 + (1/2)*x198 + (1/2)*x200 - x204 - x209 + x210 - x215)
    out[3, 2] = ddpsi*x0 + ddtheta*x21 + ddtheta*x22 + dphi*dpsi*x6 - x183
    out[3, 3] = x182
    out[3, 4] = 0
    out[3, 5] = 0
    out[3, 6] = 0
    out[3, 7] = -mB*x209 + mW*x198 + mW*x200 + x136*x98 + (1/2)*x199 + x200*x94 - x209*x88 + x210*x88 + x219
    out[3, 8] = rW*(-mB*x208*x7 + mW*x197 + x104*x149 + x106*x136 + x107*x149 - 2*x115*x208 + x118*x136 + x197*x94 - x224 - x225 - x227 - x229)
    out[3, 9] = x248
    out[3, 10] = x250
    out[4, 0] = 0
    out[4, 1] = 0
    out[4, 2] = ddphi*x3 + ddqR*x21*x72 + ddqR*x22*x72 + ddqR*x38 + dphi*dpsi*x0*x7 + dqR*dtheta*x21*x3*x7 + dqR*dtheta*x22*x3*x7 - x111 - x113 - x16*x3 - x3*x52 - x312 - x9
    out[4, 3] = x312
    out[4, 4] = 0
    out[4, 5] = 0
    out[4, 6] = 0
    out[4, 7] = 0
    out[4, 8] = 0
    out[4, 9] = 0
    out[4, 10] = 0
    return out


@njit(cache=True)
def kinetic_energy(phi, theta, dpsi, dphi, dtheta, dqD, dqR, p):
    """Total kinetic energy of the three bodies."""
    mW = p[0]; mB = p[1]; IWoff = p[2]; IWspin = p[3]; IBx = p[4]; IBy = p[5]; IBz = p[6]; rW = p[7]; lW = p[8]
    x0 = dphi**2
    x1 = math.sin(phi)
    x2 = x1**2
    x3 = math.cos(phi)
    x4 = x3**2
    x5 = dpsi*x1
    x6 = dqD + dtheta
    x7 = x1*x6
    x8 = dpsi + x7
    x9 = IWoff - IWspin
    x10 = x1*x9
    x11 = x4*x9
    x12 = x2*x9
    x13 = math.cos(theta)
    x14 = x13**2
    x15 = math.sin(theta)
    x16 = x15**2
    x17 = dtheta*x1
    x18 = x13*x15
    x19 = x18*(IBx - IBz)
    x20 = dpsi + x17
    x21 = x20*x3
    x22 = dtheta*x3
    x23 = lW*x15
    x24 = x22*x23
    x25 = lW*x13
    x26 = rW + x25
    x27 = dphi*x26
    x28 = rW*x6
    x29 = dtheta*x25
    x30 = dpsi*x23 + x17*x23
    x31 = dphi + dqR*x13
    x32 = dqR*x15
    x33 = x1*x32 + x22
    x34 = x10*x18
    x35 = x20 - x3*x32
    x36 = x3*x35
    x37 = x18*x9
    x38 = dphi*x19
    x39 = IBx*x16
    x40 = IBz*x14
    x41 = -IBy + x39 + x40
    x42 = 2*rW + x25
    x43 = dphi*x42
    x44 = x10*x16
    return (1/2)*IWoff*x0 + (1/2)*dphi*(dphi*(IBx*x14 + IBz*x16) + x17*x19*x3 - x19*x21) + (1/8)*mB*((x1*x43 + x24)**2 + (-x3*x43 + x30)**2 + (2*x28 + x29 + x42*x5)**2) + (1/2)*mW*rW**2*(x0*x2 + x0*x4 + (x5 + x6)**2) + (1/2)*mW*((x1*x27 + x24)**2 + (-x27*x3 + x30)**2 + (x26*x5 + x28 + x29)**2) - 1/2*x20*(x17*x4*x41 - x20*(IBy*x2 + x39*x4 + x4*x40) + x3*x38) + (1/2)*x22*(-x1*x21*x41 + x1*x38 + x22*(IBy*x4 + x2*x39 + x2*x40)) + (1/2)*x31*(x31*(IWoff - x14*x9) - x33*x34 + x36*x37) + (1/2)*x33*(-x31*x34 + x33*(IWoff - x12*x16) + x36*x44) + (1/2)*x35*(x3*x31*x37 + x3*x33*x44 + x35*(IWoff - x11*x16)) - 1/2*x4*x6*(x10*x8 - x6*(IWoff - x11)) - 1/2*x8*(x11*x7 - x8*(IWoff - x12))


@njit(cache=True)
def potential_energy(phi, theta, p):
    """Gravitational potential energy above the ground contact."""
    mW = p[0]; mB = p[1]; rW = p[7]; lW = p[8]
    g_acc = G_ACC
    return g_acc*(mB + 2*mW)*((1/2)*lW*math.cos(theta) + rW)*math.cos(phi)
