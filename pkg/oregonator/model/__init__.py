"""Parameters of the Oregonator system and the constants of its a-priori estimates"""
