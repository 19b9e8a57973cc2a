"""
Fixed-tick kinematic ground truth. Path followers move at constant speed
along their polyline; arriving at a waypoint splits the tick so no corner
is ever cut.
"""
import math
from dataclasses import replace

from geometry.primitives import Pose2, seconds_to_micros

from .agents import Behavior, WorldState


def step_world(state, spec, dt):
    if seconds_to_micros(dt) != spec.tick_us:
        raise ValueError('step of %ss does not match the scenario tick %ss' % (dt, spec.tick_dt))
    agents = tuple(step_agent(agent, state.time, dt) for agent in state.agents)
    return WorldState(state.time + spec.tick_us, agents)


def step_agent(agent, time, dt):
    if agent.behavior == Behavior.STATIONARY:
        return agent
    if agent.behavior == Behavior.PLANNED:
        return _drive(agent, dt)
    if agent.behavior == Behavior.SCRIPTED:
        agent = replace(agent, speed=agent.scheduled_speed(time))
    return _advance(agent, agent.speed * dt)


def _drive(agent, dt):
    travel = agent.speed * dt
    if travel == 0.0:
        return agent
    pose = Pose2(agent.pose.x + travel * math.cos(agent.pose.heading),
            agent.pose.y + travel * math.sin(agent.pose.heading), agent.pose.heading)
    return replace(agent, pose=pose)


def _advance(agent, travel):
    x, y, heading = agent.pose.x, agent.pose.y, agent.pose.heading
    index = agent.waypoint_index
    path = agent.path
    while travel > 0.0 and index < len(path):
        tx, ty = path[index]
        gap = math.hypot(tx - x, ty - y)
        if gap > 0.0:
            heading = math.atan2(ty - y, tx - x)
        if travel >= gap:
            x, y = tx, ty
            travel -= gap
            index += 1
        else:
            x += (tx - x) * travel / gap
            y += (ty - y) * travel / gap
            travel = 0.0
    agent = replace(agent, pose=Pose2(x, y, heading), waypoint_index=index)
    if index >= len(path):
        return replace(agent, behavior=Behavior.STATIONARY, speed=0.0)
    return agent
