from burau_image.quaternionic import parse_word

# the length-40 biminimal word found at M = 50
M50_WORD = parse_word(
    "g[-1] g[2]^-1 g[-1/3] g[4]^-1 g[-1/5] g[6]^-1 g[-1/7] g[8]^-1 g[-1/9] g[-11/8]^-1 "
    "g[13/17] g[-18/19]^-1 g[25/9] g[8/31]^-1 g[-41/17] g[31/46]^-1 g[-38/43] g[29/37]^-1 "
    "g[-20/23] g[-21]^-1 g[1/20] g[-19]^-1 g[1/18] g[-17]^-1 g[1/16] g[-15]^-1 g[1/14] "
    "g[-13]^-1 g[1/12] g[-11]^-1 g[1/10] g[-9]^-1 g[1/8] g[-7]^-1 g[1/6] g[-5]^-1 g[1/4] "
    "g[-3]^-1 g[1/2] g[-1]^-1"
)
