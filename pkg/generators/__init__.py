"""Result table generators, one per command"""
