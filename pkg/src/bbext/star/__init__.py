from bbext.star.graph import PartyGraph
from bbext.star.matching import brute_force_max_matching_size, is_matching, max_matching
from bbext.star.star import StarResult, brute_force_star_exists, derive_fe, is_star, star
